#pragma once

#include "cxlab/assembly.hpp"
#include "cxlab/bdm.hpp"
#include "cxlab/entropy.hpp"
#include "cxlab/experiments.hpp"
#include "cxlab/lz.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace cxlab {

using Json = nlohmann::ordered_json;

Json to_json(const AssemblyResult& r);
Json to_json(const ParseResult& p);
Json to_json(const EntropyReport& r);
Json to_json(const HierarchyReport& r);
Json to_json(const FitReport& f);
Json to_json(const ZbcReport& r);
Json to_json(const GrowingReport& r);
Json to_json(const MolecularReport& r);

struct RunInfo {
    /// Omit elapsed time, timestamp and thread count so identical runs give
    /// byte-identical files.
    bool stable = false;
    double elapsed_seconds = 0.0;
};

/// Each writer creates `dir` if needed and writes report.json plus CSV
/// tables. Throws ValidationError when the directory cannot be written.
void write_report(const std::string& dir, const ZbcReport& r, const RunInfo& info);
void write_report(const std::string& dir, const GrowingReport& r, const RunInfo& info);
void write_report(const std::string& dir, const MolecularReport& r, const RunInfo& info);

} // namespace cxlab

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace cxlab {

/// Deterministic one-tape machines with `states` states over `symbols`
/// symbols (blank = 0). Each (state, read) transition either writes a symbol,
/// moves one cell and enters a state, or writes a symbol and halts, giving
/// (2 * states * symbols + symbols)^(states * symbols) machines.
struct MachineSpace {
    unsigned states = 2;
    unsigned symbols = 2;
    unsigned cutoff = 500;

    friend bool operator==(const MachineSpace&, const MachineSpace&) = default;
};

/// Number of machines in the space; nullopt if it overflows 64 bits.
std::optional<std::uint64_t> machine_count(const MachineSpace& space) noexcept;

/// Orders outputs by length, then lexicographically.
struct ShortLex {
    using is_transparent = void;
    bool operator()(std::string_view a, std::string_view b) const noexcept
    {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
};

/// Output frequencies of every machine in a space that halts within the
/// step cutoff. Outputs are the visited cells, leftmost to rightmost, as
/// digit characters.
class CtmTable {
public:
    using Counts = std::map<std::string, std::uint64_t, ShortLex>;

    CtmTable() = default;
    /// Throws ValidationError if total != sum of counts.
    CtmTable(MachineSpace space, Counts counts, std::uint64_t total_halting);

    const MachineSpace& space() const noexcept { return space_; }
    std::uint64_t total_halting() const noexcept { return total_; }
    const Counts& counts() const noexcept { return counts_; }

    std::uint64_t count(std::string_view output) const noexcept;
    bool covers(std::string_view output) const noexcept { return count(output) > 0; }

    /// -log2(Q(x)/Q). Throws ValidationError when x never appears.
    double k_ctm(std::string_view output) const;

    /// Largest k_ctm over all outputs in the table.
    double max_k() const noexcept;

    /// Longest L such that every string of length <= L over the table's
    /// symbols appears.
    std::size_t complete_length() const noexcept;

    /// Versioned TSV: #states, #symbols, #cutoff, #total_halting header
    /// lines, then output<TAB>count rows in short-lex order.
    void write(std::ostream& out) const;
    static CtmTable read(std::istream& in);
    void save(const std::string& path) const;
    static CtmTable load(const std::string& path);

private:
    MachineSpace space_;
    Counts counts_;
    std::uint64_t total_ = 0;
    double max_k_ = 0.0;
};

struct CtmBuildOptions {
    /// Machines allowed before the build is refused with BudgetError.
    std::uint64_t machine_budget = 100'000'000;
    /// Worker threads; 0 picks worker_count().
    unsigned threads = 0;
};

/// Runs every machine from a blank tape. Counts are summed per output, so
/// the table does not depend on how machines are split across workers.
CtmTable ctm_build(const MachineSpace& space, const CtmBuildOptions& options = {});

} // namespace cxlab

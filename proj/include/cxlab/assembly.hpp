#pragma once

#include "cxlab/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cxlab {

enum class AssemblyMethod { Exact, LzPrefix, GreedyRepeat, BestOf };

std::string_view to_string(AssemblyMethod m) noexcept;

/// How a dictionary entry is built: a basis symbol, or the join of two
/// earlier entries.
struct Construction {
    bool is_basis = true;
    Symbol symbol = 0;
    std::size_t left = 0;
    std::size_t right = 0;

    static Construction basis(Symbol s) noexcept { return {true, s, 0, 0}; }
    static Construction join(std::size_t l, std::size_t r) noexcept { return {false, 0, l, r}; }
};

struct AssemblyEntry {
    std::size_t id = 0;
    Construction construction;
};

/// Assembly pathway for a string: basis entries (the symbols present, in
/// first-occurrence order) followed by joins in build order. Entry ids equal
/// their positions. `ai` counts the joins; `final_id` names the target.
struct AssemblyResult {
    std::size_t ai = 0;
    std::vector<AssemblyEntry> dictionary;
    std::size_t final_id = 0;
    std::uint64_t k_ai_bits = 0;
    AssemblyMethod method = AssemblyMethod::BestOf;
    std::size_t alphabet_size = 1;
    std::string labels;
    /// Exact solver only: search nodes expanded, and the largest join
    /// count proven infeasible (ai - 1), or -1 when ai hit the lower bound.
    std::uint64_t search_nodes = 0;
    std::int64_t proven_infeasible = -1;
};

struct ExactOptions {
    /// Longest string the exact solver accepts; at most kExactHardLimit.
    std::size_t max_length = 20;
    /// Search nodes allowed before giving up with BudgetError.
    std::uint64_t node_budget = 20'000'000;
};

inline constexpr std::size_t kExactHardLimit = 32;

/// Minimal number of joins, each concatenating two already-built strings,
/// that produce x from its symbols.
///
/// Searches over sets S of substrings of x (length >= 2) that contain x and
/// in which every member splits into two parts that are symbols or members
/// of S; ai(x) = min |S|. Iterative deepening from ceil(log2 n), with the
/// best_of heuristic as the upper bound, a memo of failed (S, unresolved)
/// states, and dominance pruning (a split needing no new member is taken
/// alone).
///
/// Throws ValidationError ("use heuristic") when n > max_length and
/// BudgetError ("budget") when the node budget runs out.
AssemblyResult ai_exact(const Sequence& x, const ExactOptions& options = {});

/// Valid join program whose size bounds ai(x) from above.
///
/// LzPrefix joins the factors of lz_prefix_parse left to right.
/// GreedyRepeat repeatedly replaces the pair of adjacent tokens with the
/// most non-overlapping occurrences (ties: longer expansion, then leftmost)
/// by a new token until no pair repeats, then joins the remaining tokens
/// left to right. BestOf returns the smaller of the two (LzPrefix on ties).
/// Joins producing an already-built string are reused, never recounted.
AssemblyResult ai_heuristic(const Sequence& x, AssemblyMethod method = AssemblyMethod::BestOf);

/// Join count of ai_heuristic(x, method) without building a result object.
std::size_t ai_estimate(std::span<const Symbol> x, AssemblyMethod method = AssemblyMethod::BestOf);

/// Bit size of the dictionary: each basis entry costs
/// codeword_width(alphabet_size) bits, each join two ids of
/// codeword_width(entries before it) bits.
std::uint64_t encode_dictionary(const AssemblyResult& r);

/// Rebuilds the target by replaying the joins. Throws CorruptParse when an
/// entry references a later or missing id.
Sequence replay(const AssemblyResult& r);

/// String value of every entry (basis and joins), indexed by id.
std::vector<std::vector<Symbol>> expand_entries(const AssemblyResult& r);

} // namespace cxlab

#pragma once

#include "cxlab/ctm.hpp"
#include "cxlab/sequence.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cxlab {

enum class BdmEstimator {
    /// k_ctm of the block from a CtmTable.
    Ctm,
    /// LZW compressed_bits of the block.
    LzwBits,
    /// Self-information of the block within the partition, log2(N / n_j).
    EntropyBits,
};

std::string_view to_string(BdmEstimator e) noexcept;
BdmEstimator parse_estimator(std::string_view name);

/// Distinct blocks of a non-overlapping partition with their
/// multiplicities, in first-occurrence order. The final short block, if
/// any, is kept as a block of its own, so sum n_j * |r_j| = n.
struct BdmPartition {
    std::size_t block_size = 0;
    std::size_t block_count = 0;
    std::vector<std::pair<std::vector<Symbol>, std::size_t>> blocks;
};

/// block_size 0 means a single block holding all of x (the partition i0).
BdmPartition partition(std::span<const Symbol> x, std::size_t block_size);

struct BdmOptions {
    BdmEstimator estimator = BdmEstimator::EntropyBits;
    /// 0 picks a default: the table's complete_length() for Ctm (at least
    /// 1), kDefaultBdmBlock otherwise.
    std::size_t block_size = 0;
    /// Whole sequence as one block; overrides block_size.
    bool single_block = false;
    const CtmTable* table = nullptr;
    /// Ctm only: charge uncovered blocks table.max_k() + 1 bits instead of
    /// throwing.
    bool fallback = false;
};

inline constexpr std::size_t kDefaultBdmBlock = 8;

struct BdmResult {
    double bits = 0.0;
    BdmPartition partition;
    std::size_t fallback_blocks = 0;
};

/// sum over distinct blocks of log2(n_j) + K_m(r_j).
///
/// Ctm requires a table; a block with a symbol outside the table's range or
/// an output the table never saw throws ValidationError ("fallback
/// required") unless options.fallback is set.
BdmResult bdm(const Sequence& x, const BdmOptions& options);
double bdm_bits(std::span<const Symbol> x, const BdmOptions& options);

/// Table key for a block: symbol s as the digit '0' + s. Throws
/// ValidationError for symbols above 9.
std::string ctm_key(std::span<const Symbol> block);

/// Additive constants of the finite-form inequalities checked by
/// verify_hierarchy. Fitted once by tools/calibrate_bounds on its own
/// seeded set (random binary strings of length 1..320, constant and
/// periodic strings of non power-of-two lengths) and frozen here.
struct BoundConstants {
    /// BDM(entropy_bits) <= N * H + c
    double entropy_vs_block_entropy = 5.33;
    /// BDM(entropy_bits) <= K_Ai + c
    double entropy_vs_kai = 0.0;
    /// BDM(ctm) <= K_Ai + c
    double ctm_vs_kai = 0.65;
};

inline constexpr BoundConstants kFrozenBounds{};

enum class CheckStatus { Pass, Fail, Skipped };

struct InequalityCheck {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant = 0.0;
    std::string reason;
};

struct HierarchyOptions {
    const CtmTable* table = nullptr;
    /// Block size for the entropy_bits BDM and N * H.
    std::size_t entropy_block = kDefaultBdmBlock;
    /// Block size for the ctm BDM; 0 uses the table's complete length.
    std::size_t ctm_block = 0;
    /// Use the exact assembly solver for K_Ai when x is short enough.
    bool exact_ai = false;
    BoundConstants constants = kFrozenBounds;
};

struct HierarchyReport {
    std::size_t length = 0;
    std::optional<double> k_ctm;
    std::optional<double> bdm_ctm;
    double bdm_entropy = 0.0;
    double block_entropy_total = 0.0;
    std::uint64_t lzw_bits = 0;
    std::uint64_t k_ai_bits = 0;
    std::size_t ai = 0;
    bool ai_exact = false;
    std::vector<InequalityCheck> checks;

    bool all_pass() const noexcept;
};

/// Evaluates every measure on x and checks
///   BDM(x, i0, ctm) == k_ctm(x)          (when the table covers x),
///   BDM(entropy_bits) <= N * H + C,
///   BDM(entropy_bits) <= K_Ai + C,
///   BDM(ctm) <= K_Ai + C                 (when a table is given).
/// Unevaluable checks are reported as skipped with a reason.
HierarchyReport verify_hierarchy(const Sequence& x, const HierarchyOptions& options = {});

} // namespace cxlab

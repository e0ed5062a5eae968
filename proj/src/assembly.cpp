#include "cxlab/assembly.hpp"

#include "cxlab/error.hpp"
#include "cxlab/lz.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <string>
#include <unordered_map>

namespace cxlab {

std::string_view to_string(AssemblyMethod m) noexcept
{
    switch (m) {
    case AssemblyMethod::Exact: return "exact";
    case AssemblyMethod::LzPrefix: return "lz_prefix";
    case AssemblyMethod::GreedyRepeat: return "greedy_repeat";
    case AssemblyMethod::BestOf: return "best_of";
    }
    return "unknown";
}

namespace {

constexpr std::uint64_t kMod = (1ULL << 61) - 1;
constexpr std::uint64_t kBase = 0x1F3D5B79ULL;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) noexcept
{
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(p & kMod) + static_cast<std::uint64_t>(p >> 61);
    return r >= kMod ? r - kMod : r;
}

/// Accumulates a join program over substrings of x. Every entry is a
/// substring of x, identified by one occurrence; joins whose result equals
/// an existing entry return that entry.
class ProgramBuilder {
public:
    explicit ProgramBuilder(std::span<const Symbol> x) : x_(x)
    {
        prefix_.resize(x.size() + 1, 0);
        power_.resize(x.size() + 1, 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            prefix_[i + 1] = (mulmod(prefix_[i], kBase) + x[i] + 1) % kMod;
            power_[i + 1] = mulmod(power_[i], kBase);
        }
        symbol_id_.fill(-1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (symbol_id_[x[i]] >= 0)
                continue;
            symbol_id_[x[i]] = static_cast<std::ptrdiff_t>(entries_.size());
            entries_.push_back({i, 1, Construction::basis(x[i])});
        }
        basis_ = entries_.size();
    }

    std::size_t symbol_id(Symbol s) const { return static_cast<std::size_t>(symbol_id_[s]); }
    std::size_t length(std::size_t id) const { return entries_[id].len; }
    std::size_t joins() const noexcept { return entries_.size() - basis_; }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Join of entries `left` and `right`, whose concatenation occurs in x
    /// at `start`.
    std::size_t join(std::size_t left, std::size_t right, std::size_t start)
    {
        const std::size_t len = entries_[left].len + entries_[right].len;
        const std::uint64_t key = hash(start, len) ^ (static_cast<std::uint64_t>(len) << 48);
        auto [lo, hi] = index_.equal_range(key);
        for (auto it = lo; it != hi; ++it) {
            const Entry& e = entries_[it->second];
            if (e.len == len && std::memcmp(&x_[e.start], &x_[start], len) == 0)
                return it->second;
        }
        const std::size_t id = entries_.size();
        entries_.push_back({start, len, Construction::join(left, right)});
        index_.emplace(key, id);
        return id;
    }

    AssemblyResult finish(std::size_t final_id, AssemblyMethod method, const Sequence* seq) const
    {
        AssemblyResult r;
        r.ai = joins();
        r.final_id = final_id;
        r.method = method;
        r.dictionary.reserve(entries_.size());
        for (std::size_t id = 0; id < entries_.size(); ++id)
            r.dictionary.push_back({id, entries_[id].construction});
        if (seq) {
            r.alphabet_size = seq->alphabet_size();
            r.labels = seq->labels();
        }
        r.k_ai_bits = encode_dictionary(r);
        return r;
    }

private:
    struct Entry {
        std::size_t start;
        std::size_t len;
        Construction construction;
    };

    std::uint64_t hash(std::size_t start, std::size_t len) const noexcept
    {
        const std::uint64_t sub = mulmod(prefix_[start], power_[len]);
        return (prefix_[start + len] + kMod - sub) % kMod;
    }

    std::span<const Symbol> x_;
    std::vector<std::uint64_t> prefix_;
    std::vector<std::uint64_t> power_;
    std::array<std::ptrdiff_t, kMaxAlphabet> symbol_id_{};
    std::vector<Entry> entries_;
    std::size_t basis_ = 0;
    std::unordered_multimap<std::uint64_t, std::size_t> index_;
};

std::size_t build_lz_prefix(ProgramBuilder& b, std::span<const Symbol> x)
{
    std::unordered_map<std::size_t, std::size_t> prefix_entry; // boundary length -> id
    std::size_t current = b.symbol_id(x[0]);
    std::size_t p = 0;
    bool first = true;
    for (std::size_t len : lz_prefix_factor_lengths(x)) {
        if (!first) {
            const std::size_t factor = len == 1 ? b.symbol_id(x[p]) : prefix_entry.at(len);
            current = b.join(current, factor, 0);
        }
        first = false;
        p += len;
        prefix_entry[p] = current;
    }
    return current;
}

std::size_t build_greedy_repeat(ProgramBuilder& b, std::span<const Symbol> x)
{
    std::vector<std::uint32_t> tok(x.size());
    std::vector<std::uint32_t> pos(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        tok[i] = static_cast<std::uint32_t>(b.symbol_id(x[i]));
        pos[i] = static_cast<std::uint32_t>(i);
    }

    struct PairStat {
        std::uint32_t count;
        std::uint32_t first;
        std::uint32_t next_free; // first index a new occurrence may start at
    };
    std::unordered_map<std::uint64_t, PairStat> stats;
    std::vector<std::uint32_t> next_tok, next_pos;

    while (tok.size() >= 2) {
        stats.clear();
        for (std::uint32_t i = 0; i + 1 < tok.size(); ++i) {
            const std::uint64_t key = (static_cast<std::uint64_t>(tok[i]) << 32) | tok[i + 1];
            auto [it, inserted] = stats.try_emplace(key, PairStat{0, i, 0});
            if (it->second.next_free > i)
                continue;
            ++it->second.count;
            it->second.next_free = i + 2;
        }
        std::uint64_t best_key = 0;
        const PairStat* best = nullptr;
        std::size_t best_len = 0;
        for (const auto& [key, st] : stats) {
            if (st.count < 2)
                continue;
            const std::size_t len = b.length(key >> 32) + b.length(key & 0xFFFFFFFFULL);
            if (!best || st.count > best->count ||
                (st.count == best->count && (len > best_len || (len == best_len && st.first < best->first)))) {
                best = &st;
                best_key = key;
                best_len = len;
            }
        }
        if (!best)
            break;
        const auto a = static_cast<std::uint32_t>(best_key >> 32);
        const auto c = static_cast<std::uint32_t>(best_key & 0xFFFFFFFFULL);
        const auto id = static_cast<std::uint32_t>(b.join(a, c, pos[best->first]));

        next_tok.clear();
        next_pos.clear();
        for (std::size_t i = 0; i < tok.size();) {
            if (i + 1 < tok.size() && tok[i] == a && tok[i + 1] == c) {
                next_tok.push_back(id);
                next_pos.push_back(pos[i]);
                i += 2;
            } else {
                next_tok.push_back(tok[i]);
                next_pos.push_back(pos[i]);
                ++i;
            }
        }
        tok.swap(next_tok);
        pos.swap(next_pos);
    }

    std::size_t current = tok[0];
    for (std::size_t i = 1; i < tok.size(); ++i)
        current = b.join(current, tok[i], 0);
    return current;
}

struct Built {
    ProgramBuilder builder;
    std::size_t final_id;
};

Built build(std::span<const Symbol> x, AssemblyMethod method)
{
    ProgramBuilder b(x);
    std::size_t final_id = method == AssemblyMethod::GreedyRepeat ? build_greedy_repeat(b, x) : build_lz_prefix(b, x);
    return {std::move(b), final_id};
}

// ---------------------------------------------------------------------------
// Exact search

class ExactSearch {
public:
    static constexpr std::size_t kMemoCapacity = 2'000'000;

    ExactSearch(std::span<const Symbol> x, std::uint64_t budget) : x_(x), budget_(budget)
    {
        std::unordered_map<std::string, int> ids;
        const std::size_t n = x.size();
        auto key_of = [&](std::size_t s, std::size_t l) {
            return std::string(reinterpret_cast<const char*>(&x[s]), l);
        };
        // Longest first so that the target is id 0.
        for (std::size_t len = n; len >= 2; --len)
            for (std::size_t s = 0; s + len <= n; ++s)
                if (ids.emplace(key_of(s, len), static_cast<int>(start_.size())).second) {
                    start_.push_back(s);
                    len_.push_back(len);
                }
        const std::size_t count = start_.size();
        splits_.resize(count);
        for (std::size_t id = 0; id < count; ++id)
            for (std::size_t k = 1; k < len_[id]; ++k) {
                const int l = k >= 2 ? ids.at(key_of(start_[id], k)) : -1;
                const int r = len_[id] - k >= 2 ? ids.at(key_of(start_[id] + k, len_[id] - k)) : -1;
                splits_[id].push_back({l, r});
            }
        words_ = (count + 63) / 64;
        set_.assign(words_, 0);
        open_.assign(words_, 0);
        choice_.assign(count, 0);
    }

    /// True when a closed set with at most `joins` members exists.
    bool solve(std::size_t joins)
    {
        std::fill(set_.begin(), set_.end(), 0);
        std::fill(open_.begin(), open_.end(), 0);
        set(set_, 0);
        set(open_, 0);
        return dfs(static_cast<int>(joins) - 1);
    }

    std::uint64_t nodes() const noexcept { return nodes_; }

    /// Members of the solution set with their chosen splits, shortest first.
    void emit(ProgramBuilder& b, std::size_t& final_id) const
    {
        std::vector<std::size_t> members;
        for (std::size_t id = 0; id < len_.size(); ++id)
            if (test(set_, id))
                members.push_back(id);
        std::stable_sort(members.begin(), members.end(),
                         [&](std::size_t a, std::size_t c) { return len_[a] < len_[c]; });
        std::vector<std::size_t> program_id(len_.size(), 0);
        for (std::size_t id : members) {
            const std::size_t k = choice_[id] + 1;
            const auto [l, r] = splits_[id][choice_[id]];
            const std::size_t left = l >= 0 ? program_id[static_cast<std::size_t>(l)] : b.symbol_id(x_[start_[id]]);
            const std::size_t right = r >= 0 ? program_id[static_cast<std::size_t>(r)] : b.symbol_id(x_[start_[id] + k]);
            program_id[id] = b.join(left, right, start_[id]);
        }
        final_id = program_id[0];
    }

private:
    using Bits = std::vector<std::uint64_t>;

    static void set(Bits& b, std::size_t i) { b[i >> 6] |= 1ULL << (i & 63); }
    static void clear(Bits& b, std::size_t i) { b[i >> 6] &= ~(1ULL << (i & 63)); }
    static bool test(const Bits& b, std::size_t i) { return (b[i >> 6] >> (i & 63)) & 1ULL; }
    bool in_set(int id) const { return id < 0 || test(set_, static_cast<std::size_t>(id)); }

    struct KeyHash {
        std::size_t operator()(const Bits& b) const noexcept
        {
            std::uint64_t h = 0x243F6A8885A308D3ULL;
            for (std::uint64_t w : b)
                h = (h ^ w) * 0x9E3779B97F4A7C15ULL + (h >> 29);
            return static_cast<std::size_t>(h);
        }
    };

    /// New members a split would add, as a sorted pair (-1 = none).
    std::array<int, 2> added_by(const std::pair<int, int>& split) const
    {
        std::array<int, 2> out{-1, -1};
        int n = 0;
        if (!in_set(split.first))
            out[static_cast<std::size_t>(n++)] = split.first;
        if (!in_set(split.second) && split.second != split.first)
            out[static_cast<std::size_t>(n++)] = split.second;
        if (n == 2 && out[0] > out[1])
            std::swap(out[0], out[1]);
        return out;
    }

    static int cost_of(const std::array<int, 2>& added) noexcept
    {
        return (added[0] >= 0) + (added[1] >= 0);
    }

    /// Members that building `id` still needs beyond S: every join at most
    /// doubles length, so from pieces no longer than the longest shorter
    /// member, ceil(log2(L / m)) - 1 new intermediates are unavoidable.
    int chain_bound(std::size_t id) const
    {
        const std::size_t len = len_[id];
        std::size_t longest = 1;
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t bits = set_[w];
            while (bits) {
                const std::size_t other = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                if (len_[other] < len)
                    longest = std::max(longest, len_[other]);
            }
        }
        int need = 0;
        for (std::size_t reach = longest * 2; reach < len; reach *= 2)
            ++need;
        return need;
    }

    bool dfs(int remaining)
    {
        if (++nodes_ > budget_)
            throw BudgetError("budget: exact assembly search exceeded " + std::to_string(budget_) + " nodes");

        // Resolve every member that has a split needing nothing new; such a
        // split dominates all others for that member.
        std::vector<std::size_t> closed;
        for (bool progress = true; progress;) {
            progress = false;
            for (std::size_t w = 0; w < words_; ++w) {
                std::uint64_t bits = open_[w];
                while (bits) {
                    const std::size_t id = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    bits &= bits - 1;
                    for (std::size_t k = 0; k < splits_[id].size(); ++k)
                        if (cost_of(added_by(splits_[id][k])) == 0) {
                            clear(open_, id);
                            choice_[id] = k;
                            closed.push_back(id);
                            progress = true;
                            break;
                        }
                }
            }
        }
        auto reopen = [&] {
            for (std::size_t id : closed)
                set(open_, id);
        };

        bool any_open = false;
        for (std::uint64_t w : open_)
            any_open |= w != 0;
        if (!any_open)
            return true; // keep `closed` resolved: the solution is complete
        if (remaining <= 0) {
            reopen();
            return false;
        }

        Bits key(set_);
        key.insert(key.end(), open_.begin(), open_.end());
        if (auto it = failed_.find(key); it != failed_.end() && it->second >= remaining) {
            reopen();
            return false;
        }

        // Branch on the open member with the fewest undominated splits.
        int bound = 0;
        std::size_t pick = 0;
        std::vector<std::pair<std::array<int, 2>, std::size_t>> best_options;
        bool have_pick = false;
        std::vector<std::pair<std::array<int, 2>, std::size_t>> options;
        for (std::size_t w = 0; w < words_ && bound <= remaining; ++w) {
            std::uint64_t bits = open_[w];
            while (bits && bound <= remaining) {
                const std::size_t id = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                options.clear();
                int cheapest = 2;
                for (std::size_t k = 0; k < splits_[id].size(); ++k) {
                    const auto added = added_by(splits_[id][k]);
                    cheapest = std::min(cheapest, cost_of(added));
                    options.push_back({added, k});
                }
                bound = std::max({bound, cheapest, chain_bound(id)});
                // Drop splits whose additions strictly contain another
                // split's, and duplicates of the same additions.
                std::vector<std::pair<std::array<int, 2>, std::size_t>> kept;
                for (const auto& opt : options) {
                    if (cost_of(opt.first) > remaining)
                        continue;
                    bool dominated = false;
                    for (const auto& other : options) {
                        if (&other == &opt || cost_of(other.first) > remaining)
                            continue;
                        const bool same = other.first == opt.first;
                        const bool subset = cost_of(other.first) == 1 && cost_of(opt.first) == 2 &&
                                            (other.first[0] == opt.first[0] || other.first[0] == opt.first[1]);
                        if (subset || (same && other.second < opt.second)) {
                            dominated = true;
                            break;
                        }
                    }
                    if (!dominated)
                        kept.push_back(opt);
                }
                if (!have_pick || kept.size() < best_options.size()) {
                    have_pick = true;
                    pick = id;
                    best_options = std::move(kept);
                }
            }
        }

        bool ok = false;
        if (bound <= remaining) {
            std::stable_sort(best_options.begin(), best_options.end(), [](const auto& a, const auto& b) {
                return cost_of(a.first) < cost_of(b.first);
            });
            clear(open_, pick);
            for (const auto& [added, k] : best_options) {
                for (int part : added)
                    if (part >= 0) {
                        set(set_, static_cast<std::size_t>(part));
                        set(open_, static_cast<std::size_t>(part));
                    }
                choice_[pick] = k;
                ok = dfs(remaining - cost_of(added));
                if (ok)
                    break;
                for (int part : added)
                    if (part >= 0) {
                        clear(set_, static_cast<std::size_t>(part));
                        clear(open_, static_cast<std::size_t>(part));
                    }
            }
            if (!ok)
                set(open_, pick);
        }
        if (!ok) {
            if (auto it = failed_.find(key); it != failed_.end())
                it->second = std::max(it->second, remaining);
            else if (failed_.size() < kMemoCapacity)
                failed_.emplace(std::move(key), remaining);
            reopen();
        }
        return ok;
    }

    std::span<const Symbol> x_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<std::size_t> start_;
    std::vector<std::size_t> len_;
    std::vector<std::vector<std::pair<int, int>>> splits_;
    std::size_t words_ = 0;
    Bits set_;
    Bits open_;
    std::vector<std::size_t> choice_;
    std::unordered_map<Bits, int, KeyHash> failed_;
};

} // namespace

AssemblyResult ai_heuristic(const Sequence& x, AssemblyMethod method)
{
    if (x.empty())
        throw ValidationError("empty sequence");
    if (method == AssemblyMethod::Exact)
        throw ValidationError("ai_heuristic does not run the exact solver");
    if (method == AssemblyMethod::BestOf) {
        auto lz = build(x.symbols(), AssemblyMethod::LzPrefix);
        auto greedy = build(x.symbols(), AssemblyMethod::GreedyRepeat);
        const auto& best = greedy.builder.joins() < lz.builder.joins() ? greedy : lz;
        return best.builder.finish(best.final_id, AssemblyMethod::BestOf, &x);
    }
    auto built = build(x.symbols(), method);
    return built.builder.finish(built.final_id, method, &x);
}

std::size_t ai_estimate(std::span<const Symbol> x, AssemblyMethod method)
{
    if (x.empty())
        throw ValidationError("empty sequence");
    switch (method) {
    case AssemblyMethod::LzPrefix:
        return lz_prefix_factor_lengths(x).size() - 1;
    case AssemblyMethod::GreedyRepeat:
        return build(x, method).builder.joins();
    case AssemblyMethod::BestOf:
        return std::min(lz_prefix_factor_lengths(x).size() - 1, build(x, AssemblyMethod::GreedyRepeat).builder.joins());
    case AssemblyMethod::Exact:
        break;
    }
    throw ValidationError("ai_estimate does not run the exact solver");
}

AssemblyResult ai_exact(const Sequence& x, const ExactOptions& options)
{
    if (x.empty())
        throw ValidationError("empty sequence");
    const std::size_t limit = std::min(options.max_length, kExactHardLimit);
    if (x.size() > limit)
        throw ValidationError("use heuristic: length " + std::to_string(x.size()) + " exceeds exact limit " +
                              std::to_string(limit));

    AssemblyResult upper = ai_heuristic(x, AssemblyMethod::BestOf);
    upper.method = AssemblyMethod::Exact;
    if (x.size() == 1) {
        upper.proven_infeasible = -1;
        return upper;
    }

    const auto lower = static_cast<std::size_t>(std::bit_width(x.size() - 1)); // ceil(log2 n)
    ExactSearch search(x.symbols(), options.node_budget);
    for (std::size_t joins = lower; joins < upper.ai; ++joins) {
        if (search.solve(joins)) {
            ProgramBuilder b(x.symbols());
            std::size_t final_id = 0;
            search.emit(b, final_id);
            AssemblyResult r = b.finish(final_id, AssemblyMethod::Exact, &x);
            r.search_nodes = search.nodes();
            r.proven_infeasible = static_cast<std::int64_t>(r.ai) - 1;
            return r;
        }
    }
    upper.search_nodes = search.nodes();
    upper.proven_infeasible = static_cast<std::int64_t>(upper.ai) - 1;
    return upper;
}

std::uint64_t encode_dictionary(const AssemblyResult& r)
{
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < r.dictionary.size(); ++i) {
        if (r.dictionary[i].construction.is_basis)
            bits += codeword_width(r.alphabet_size);
        else
            bits += 2ULL * codeword_width(i);
    }
    return bits;
}

std::vector<std::vector<Symbol>> expand_entries(const AssemblyResult& r)
{
    std::vector<std::vector<Symbol>> value(r.dictionary.size());
    for (std::size_t i = 0; i < r.dictionary.size(); ++i) {
        const auto& e = r.dictionary[i];
        if (e.id != i)
            throw CorruptParse("corrupt parse: dictionary ids out of order");
        const auto& c = e.construction;
        if (c.is_basis) {
            if (c.symbol >= r.alphabet_size)
                throw CorruptParse("corrupt parse: basis symbol outside alphabet");
            value[i] = {c.symbol};
            continue;
        }
        if (c.left >= i || c.right >= i)
            throw CorruptParse("corrupt parse: join references a later entry");
        value[i] = value[c.left];
        value[i].insert(value[i].end(), value[c.right].begin(), value[c.right].end());
    }
    return value;
}

Sequence replay(const AssemblyResult& r)
{
    if (r.final_id >= r.dictionary.size())
        throw CorruptParse("corrupt parse: final id not in dictionary");
    auto values = expand_entries(r);
    return Sequence(std::move(values[r.final_id]), r.alphabet_size, r.labels);
}

} // namespace cxlab

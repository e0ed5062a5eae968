#include "cxlab/ctm.hpp"

#include "cxlab/error.hpp"
#include "cxlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace cxlab {

namespace {

constexpr unsigned kMaxTableSymbols = 10;

struct Transition {
    bool halt = false;
    std::uint8_t write = 0;
    bool right = false;
    unsigned next = 0;
};

void check_space(const MachineSpace& s)
{
    if (s.states == 0 || s.symbols < 2 || s.symbols > kMaxTableSymbols || s.cutoff == 0)
        throw ValidationError("machine space needs states >= 1, 2 <= symbols <= 10, cutoff >= 1");
}

// Runs one machine; returns false if it does not halt within the cutoff.
bool run_machine(const std::vector<Transition>& table, unsigned symbols, unsigned cutoff,
                 std::vector<std::uint8_t>& tape, std::string& output)
{
    const std::size_t origin = cutoff + 1;
    std::fill(tape.begin(), tape.end(), 0);
    std::size_t head = origin, lo = origin, hi = origin;
    unsigned state = 0;
    for (unsigned step = 0; step < cutoff; ++step) {
        const Transition& t = table[state * symbols + tape[head]];
        tape[head] = t.write;
        if (t.halt) {
            output.assign(hi - lo + 1, '0');
            for (std::size_t i = lo; i <= hi; ++i)
                output[i - lo] = static_cast<char>('0' + tape[i]);
            return true;
        }
        head = t.right ? head + 1 : head - 1;
        lo = std::min(lo, head);
        hi = std::max(hi, head);
        state = t.next;
    }
    return false;
}

std::uint64_t parse_header(std::istream& in, const std::string& key)
{
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("ctm table: missing #" + key);
    std::istringstream fields(line);
    std::string name;
    std::uint64_t value = 0;
    if (!(fields >> name >> value) || name != "#" + key)
        throw ValidationError("ctm table: expected #" + key + " header, got '" + line + "'");
    return value;
}

} // namespace

std::optional<std::uint64_t> machine_count(const MachineSpace& s) noexcept
{
    const unsigned __int128 base = 2ULL * s.states * s.symbols + s.symbols;
    unsigned __int128 total = 1;
    for (unsigned i = 0; i < s.states * s.symbols; ++i) {
        total *= base;
        if (total > ~std::uint64_t{0})
            return std::nullopt;
    }
    return static_cast<std::uint64_t>(total);
}

CtmTable::CtmTable(MachineSpace space, Counts counts, std::uint64_t total_halting)
    : space_(space), counts_(std::move(counts)), total_(total_halting)
{
    std::uint64_t sum = 0;
    std::uint64_t rarest = ~std::uint64_t{0};
    for (const auto& [out, c] : counts_) {
        if (c == 0)
            throw ValidationError("ctm table: zero count for '" + out + "'");
        for (char ch : out)
            if (ch < '0' || ch >= static_cast<char>('0' + space_.symbols))
                throw ValidationError("ctm table: output '" + out + "' outside the symbol range");
        sum += c;
        rarest = std::min(rarest, c);
    }
    if (sum != total_)
        throw ValidationError("ctm table: counts sum to " + std::to_string(sum) + ", header says " +
                              std::to_string(total_));
    if (!counts_.empty())
        max_k_ = std::log2(static_cast<double>(total_) / static_cast<double>(rarest));
}

std::uint64_t CtmTable::count(std::string_view output) const noexcept
{
    auto it = counts_.find(output);
    return it == counts_.end() ? 0 : it->second;
}

double CtmTable::k_ctm(std::string_view output) const
{
    const std::uint64_t c = count(output);
    if (c == 0)
        throw ValidationError("ctm table has no entry for '" + std::string(output) + "'");
    return std::log2(static_cast<double>(total_) / static_cast<double>(c));
}

double CtmTable::max_k() const noexcept { return max_k_; }

std::size_t CtmTable::complete_length() const noexcept
{
    std::size_t len = 0;
    std::uint64_t expected = space_.symbols;
    for (;;) {
        std::uint64_t seen = 0;
        for (auto it = counts_.lower_bound(std::string(len + 1, '0'));
             it != counts_.end() && it->first.size() == len + 1; ++it)
            ++seen;
        if (seen != expected)
            return len;
        ++len;
        expected *= space_.symbols;
    }
}

void CtmTable::write(std::ostream& out) const
{
    out << "#states\t" << space_.states << '\n'
        << "#symbols\t" << space_.symbols << '\n'
        << "#cutoff\t" << space_.cutoff << '\n'
        << "#total_halting\t" << total_ << '\n';
    for (const auto& [output, c] : counts_)
        out << output << '\t' << c << '\n';
}

CtmTable CtmTable::read(std::istream& in)
{
    MachineSpace space;
    space.states = static_cast<unsigned>(parse_header(in, "states"));
    space.symbols = static_cast<unsigned>(parse_header(in, "symbols"));
    space.cutoff = static_cast<unsigned>(parse_header(in, "cutoff"));
    const std::uint64_t total = parse_header(in, "total_halting");
    check_space(space);

    Counts counts;
    std::string line;
    std::size_t row = 4;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty())
            continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ValidationError("ctm table: malformed row " + std::to_string(row));
        std::uint64_t c = 0;
        try {
            std::size_t used = 0;
            c = std::stoull(line.substr(tab + 1), &used);
            if (used != line.size() - tab - 1)
                throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ValidationError("ctm table: bad count on row " + std::to_string(row));
        }
        if (!counts.emplace(line.substr(0, tab), c).second)
            throw ValidationError("ctm table: duplicate output on row " + std::to_string(row));
    }
    return CtmTable(space, std::move(counts), total);
}

void CtmTable::save(const std::string& path) const
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + path);
    write(out);
    if (!out)
        throw ValidationError("write failed: " + path);
}

CtmTable CtmTable::load(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path);
    return read(in);
}

CtmTable ctm_build(const MachineSpace& space, const CtmBuildOptions& options)
{
    check_space(space);
    const auto total = machine_count(space);
    if (!total || *total > options.machine_budget)
        throw BudgetError("budget: machine space (" + std::to_string(space.states) + "," +
                          std::to_string(space.symbols) + ") has " +
                          (total ? std::to_string(*total) : std::string("more than 2^64")) +
                          " machines, budget is " + std::to_string(options.machine_budget));

    const unsigned k = space.symbols;
    const unsigned cells = space.states * k;
    const std::uint64_t base = 2ULL * space.states * k + k;

    // Slice s covers machine indices [s * slice, (s+1) * slice).
    const std::uint64_t slice = std::max<std::uint64_t>(1, std::min<std::uint64_t>(*total, 1 << 16));
    const std::size_t slices = static_cast<std::size_t>((*total + slice - 1) / slice);
    std::vector<std::map<std::string, std::uint64_t>> partial(slices);

    parallel_for(
        slices,
        [&](std::size_t s) {
            std::vector<Transition> table(cells);
            std::vector<std::uint8_t> tape(2 * static_cast<std::size_t>(space.cutoff) + 3);
            std::string output;
            auto& local = partial[s];
            const std::uint64_t end = std::min<std::uint64_t>(*total, (s + 1) * slice);
            for (std::uint64_t m = s * slice; m < end; ++m) {
                std::uint64_t code = m;
                for (unsigned c = 0; c < cells; ++c) {
                    auto d = static_cast<unsigned>(code % base);
                    code /= base;
                    Transition& t = table[c];
                    t.halt = d < k;
                    if (t.halt) {
                        t.write = static_cast<std::uint8_t>(d);
                        continue;
                    }
                    d -= k;
                    t.write = static_cast<std::uint8_t>(d % k);
                    t.right = (d / k) % 2 == 1;
                    t.next = d / (2 * k);
                }
                if (run_machine(table, k, space.cutoff, tape, output))
                    ++local[output];
            }
        },
        options.threads);

    CtmTable::Counts counts;
    std::uint64_t halting = 0;
    for (const auto& local : partial)
        for (const auto& [out, c] : local) {
            counts[out] += c;
            halting += c;
        }
    return CtmTable(space, std::move(counts), halting);
}

} // namespace cxlab

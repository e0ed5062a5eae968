#include "cxlab/stats.hpp"

#include "cxlab/error.hpp"
#include "cxlab/parallel.hpp"
#include "cxlab/rng.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>

namespace cxlab {

namespace {

void require_pairs(std::span<const double> xs, std::span<const double> ys, std::size_t min_n)
{
    if (xs.size() != ys.size())
        throw ValidationError("paired samples differ in length");
    if (xs.size() < min_n)
        throw ValidationError("degenerate: need at least " + std::to_string(min_n) + " points");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            throw ValidationError("non-finite value at index " + std::to_string(i));
}

double mean_of(std::span<const double> v)
{
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Sum of squared deviations, two-pass.
double ss_of(std::span<const double> v, double mean)
{
    double s = 0.0;
    for (double x : v)
        s += (x - mean) * (x - mean);
    return s;
}

double quantile7(const std::vector<double>& sorted, double q)
{
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

} // namespace

std::vector<double> mid_ranks(std::span<const double> values)
{
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]])
            ++j;
        const double r = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t t = i; t < j; ++t)
            ranks[order[t]] = r;
        i = j;
    }
    return ranks;
}

double pearson(std::span<const double> xs, std::span<const double> ys)
{
    require_pairs(xs, ys, 3);
    const double mx = mean_of(xs), my = mean_of(ys);
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        sxy += (xs[i] - mx) * (ys[i] - my);
    const double sxx = ss_of(xs, mx), syy = ss_of(ys, my);
    if (sxx <= 0.0 || syy <= 0.0)
        throw ValidationError("degenerate: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double spearman(std::span<const double> xs, std::span<const double> ys)
{
    require_pairs(xs, ys, 3);
    const auto rx = mid_ranks(xs), ry = mid_ranks(ys);
    return pearson(rx, ry);
}

LinearFit ols(std::span<const double> xs, std::span<const double> ys)
{
    require_pairs(xs, ys, 3);
    const double mx = mean_of(xs), my = mean_of(ys);
    const double sxx = ss_of(xs, mx);
    if (sxx <= 0.0)
        throw ValidationError("degenerate: zero x variance");
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        sxy += (xs[i] - mx) * (ys[i] - my);
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    const double syy = ss_of(ys, my);
    f.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 0.0;
    return f;
}

double pinball_loss(std::span<const double> xs, std::span<const double> ys, double tau, double a, double b)
{
    double loss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = ys[i] - a - b * xs[i];
        loss += u >= 0.0 ? tau * u : (tau - 1.0) * u;
    }
    return loss;
}

QuantileLine quantile_regression(std::span<const double> xs, std::span<const double> ys, double tau)
{
    require_pairs(xs, ys, 2);
    if (!(tau > 0.0 && tau < 1.0))
        throw ValidationError("tau must lie in (0, 1)");
    const std::size_t n = xs.size();
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs[0]; }))
        throw ValidationError("degenerate: x takes a single value");

    // For a line through anchor i the loss is convex piecewise linear in the
    // slope with kinks at the slopes towards the other points; only kinks
    // where the slope sign changes can be optimal, and only those are scored.
    struct Kink {
        double slope;
        double weight;
    };
    std::vector<Kink> kinks;
    QuantileLine best;
    best.loss = std::numeric_limits<double>::infinity();
    bool have = false;
    auto consider = [&](double a, double b) {
        const double loss = pinball_loss(xs, ys, tau, a, b);
        const double tol = 1e-12 * std::max(1.0, std::abs(best.loss));
        bool better = !have || loss < best.loss - tol;
        if (!better && std::abs(loss - best.loss) <= tol) {
            if (std::abs(b) != std::abs(best.slope))
                better = std::abs(b) < std::abs(best.slope);
            else
                better = std::abs(a) < std::abs(best.intercept);
        }
        if (better) {
            best = {a, b, loss};
            have = true;
        }
    };

    for (std::size_t i = 0; i < n; ++i) {
        kinks.clear();
        double slope = 0.0;
        double total = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = xs[j] - xs[i];
            if (d == 0.0)
                continue;
            kinks.push_back({(ys[j] - ys[i]) / d, std::abs(d)});
            slope -= d > 0.0 ? tau * d : (1.0 - tau) * -d;
            total += std::abs(d);
        }
        std::sort(kinks.begin(), kinks.end(), [](const Kink& l, const Kink& r) { return l.slope < r.slope; });
        const double eps = 1e-12 * total;
        for (std::size_t t = 0; t < kinks.size();) {
            std::size_t u = t;
            double jump = 0.0;
            while (u < kinks.size() && kinks[u].slope == kinks[t].slope)
                jump += kinks[u++].weight;
            const double before = slope, after = slope + jump;
            if (before <= eps && after >= -eps)
                consider(ys[i] - kinks[t].slope * xs[i], kinks[t].slope);
            slope = after;
            if (before > eps)
                break;
            t = u;
        }
    }
    return best;
}

std::string_view to_string(Family f) noexcept
{
    switch (f) {
    case Family::Pareto: return "pareto";
    case Family::Geometric: return "geometric";
    case Family::Gaussian: return "gaussian";
    }
    return "?";
}

namespace {

struct Model {
    Family family;
    std::vector<double> params;

    double cdf(double x) const
    {
        switch (family) {
        case Family::Pareto:
            return x < params[0] ? 0.0 : 1.0 - std::pow(params[0] / x, params[1]);
        case Family::Geometric: {
            const double k = std::floor(x - params[0] + 1e-9);
            return k < 0.0 ? 0.0 : 1.0 - std::pow(1.0 - params[1], k + 1.0);
        }
        case Family::Gaussian:
            return 0.5 * std::erfc(-(x - params[0]) / (params[1] * std::sqrt(2.0)));
        }
        return 0.0;
    }

    // Limit from the left; differs from cdf only at geometric atoms.
    double cdf_left(double x) const { return family == Family::Geometric ? cdf(x - 1.0) : cdf(x); }

    double log_density(double x) const
    {
        switch (family) {
        case Family::Pareto:
            return std::log(params[1]) + params[1] * std::log(params[0]) - (params[1] + 1.0) * std::log(x);
        case Family::Geometric:
            return std::log(params[1]) + (x - params[0]) * std::log1p(-params[1]);
        case Family::Gaussian: {
            const double z = (x - params[0]) / params[1];
            return -0.5 * z * z - std::log(params[1]) - 0.5 * std::log(2.0 * std::numbers::pi);
        }
        }
        return 0.0;
    }
};

bool integer_valued(std::span<const double> v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return std::abs(x - std::round(x)) < 1e-9; });
}

} // namespace

FitReport fit_distribution(std::span<const double> values, Family family)
{
    const std::size_t n = values.size();
    if (n < kMinFitSamples)
        throw ValidationError("insufficient data: need at least " + std::to_string(kMinFitSamples) + " values");
    for (double v : values)
        if (!std::isfinite(v))
            throw ValidationError("non-finite value");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front(), hi = sorted.back();
    if (lo == hi)
        throw ValidationError("degenerate: constant values");
    const bool integers = integer_valued(values);

    Model m{family, {}};
    switch (family) {
    case Family::Pareto: {
        if (lo <= 0.0)
            throw ValidationError("pareto requires positive values");
        double s = 0.0;
        for (double v : values)
            s += std::log(v / lo);
        m.params = {lo, static_cast<double>(n) / s};
        break;
    }
    case Family::Geometric: {
        if (!integers)
            throw ValidationError("geometric requires integer values");
        const double mean_k = mean_of(values) - lo;
        m.params = {lo, 1.0 / (1.0 + mean_k)};
        break;
    }
    case Family::Gaussian: {
        const double mu = mean_of(values);
        m.params = {mu, std::sqrt(ss_of(values, mu) / static_cast<double>(n))};
        break;
    }
    }

    FitReport r;
    r.family = family;
    r.params = m.params;
    for (double v : values)
        r.log_likelihood += m.log_density(v);

    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i])
            ++j;
        const double v = sorted[i];
        r.ks_stat = std::max({r.ks_stat, std::abs(static_cast<double>(j) / nn - m.cdf(v)),
                              std::abs(static_cast<double>(i) / nn - m.cdf_left(v))});
        i = j;
    }

    std::vector<double> edges;
    if (integers && hi - lo <= 200.0) {
        for (double e = lo - 0.5; e <= hi + 0.5 + 1e-9; e += 1.0)
            edges.push_back(e);
    } else {
        constexpr int kBins = 50;
        for (int b = 0; b <= kBins; ++b)
            edges.push_back(lo + (hi - lo) * b / kBins);
    }
    std::vector<double> observed(edges.size() - 1, 0.0);
    for (double v : values) {
        auto it = std::upper_bound(edges.begin(), edges.end(), v);
        std::size_t bin = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
        observed[std::min(bin, observed.size() - 1)] += 1.0;
    }
    double abs_sum = 0.0, sq_sum = 0.0;
    for (std::size_t b = 0; b < observed.size(); ++b) {
        const bool last = b + 1 == observed.size();
        const double upper = last ? m.cdf(edges[b + 1]) : m.cdf_left(edges[b + 1]);
        const double lower = b == 0 ? m.cdf_left(edges[0]) : m.cdf_left(edges[b]);
        const double expected = nn * std::max(0.0, upper - lower);
        abs_sum += std::abs(observed[b] - expected);
        sq_sum += (observed[b] - expected) * (observed[b] - expected);
    }
    r.mae = abs_sum / static_cast<double>(observed.size());
    r.rmse = std::sqrt(sq_sum / static_cast<double>(observed.size()));
    return r;
}

std::vector<FitReport> rank_fits(std::span<const double> values)
{
    std::vector<FitReport> fits;
    for (Family f : {Family::Pareto, Family::Geometric, Family::Gaussian}) {
        try {
            fits.push_back(fit_distribution(values, f));
        } catch (const ValidationError& e) {
            if (std::string_view(e.what()).starts_with("insufficient") ||
                std::string_view(e.what()).starts_with("degenerate"))
                throw;
        }
    }
    std::stable_sort(fits.begin(), fits.end(),
                     [](const FitReport& a, const FitReport& b) { return a.ks_stat < b.ks_stat; });
    return fits;
}

TTest welch_t(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 2 || b.size() < 2)
        throw ValidationError("welch test needs at least 2 values per sample");
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double ma = mean_of(a), mb = mean_of(b);
    const double va = ss_of(a, ma) / (na - 1.0), vb = ss_of(b, mb) / (nb - 1.0);
    if (va == 0.0 && vb == 0.0)
        throw ValidationError("degenerate: zero variance in both samples");
    const double qa = va / na, qb = vb / nb;
    TTest r;
    r.t = (ma - mb) / std::sqrt(qa + qb);
    r.df = (qa + qb) * (qa + qb) / (qa * qa / (na - 1.0) + qb * qb / (nb - 1.0));
    const boost::math::students_t dist(r.df);
    r.p_value = std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t))));
    return r;
}

KruskalWallis kruskal_wallis(const std::vector<std::vector<double>>& groups)
{
    if (groups.size() < 2)
        throw ValidationError("kruskal-wallis needs at least 2 groups");
    std::vector<double> pooled;
    for (const auto& g : groups) {
        if (g.empty())
            throw ValidationError("kruskal-wallis: empty group");
        pooled.insert(pooled.end(), g.begin(), g.end());
    }
    const auto ranks = mid_ranks(pooled);
    const double n = static_cast<double>(pooled.size());

    double sum = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        double r = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i)
            r += ranks[offset + i];
        sum += r * r / static_cast<double>(g.size());
        offset += g.size();
    }
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double ties = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        const double t = static_cast<double>(j - i);
        ties += t * t * t - t;
        i = j;
    }
    const double correction = 1.0 - ties / (n * n * n - n);
    if (correction <= 0.0)
        throw ValidationError("degenerate: all values identical");

    KruskalWallis r;
    r.h = (12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0)) / correction;
    r.h = std::max(r.h, 0.0);
    r.df = static_cast<double>(groups.size() - 1);
    const boost::math::chi_squared dist(r.df);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.h));
    return r;
}

namespace {

struct CucconiScale {
    double n1, mean_sq, denom, rho;

    CucconiScale(std::size_t n1_, std::size_t n2_)
    {
        const double N = static_cast<double>(n1_ + n2_);
        n1 = static_cast<double>(n1_);
        mean_sq = n1 * (N + 1.0) * (2.0 * N + 1.0);
        denom = std::sqrt(n1 * static_cast<double>(n2_) * (N + 1.0) * (2.0 * N + 1.0) * (8.0 * N + 11.0) / 5.0);
        rho = 2.0 * (N * N - 4.0) / ((2.0 * N + 1.0) * (8.0 * N + 11.0)) - 1.0;
    }

    double operator()(double sum_sq, double sum_contrary_sq) const
    {
        const double u = (6.0 * sum_sq - mean_sq) / denom;
        const double v = (6.0 * sum_contrary_sq - mean_sq) / denom;
        return (u * u + v * v - 2.0 * rho * u * v) / (2.0 * (1.0 - rho * rho));
    }
};

} // namespace

double cucconi_statistic(std::span<const double> a, std::span<const double> b)
{
    if (a.size() < 5 || b.size() < 5)
        throw ValidationError("cucconi test needs at least 5 values per sample");
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = mid_ranks(pooled);
    const double top = static_cast<double>(pooled.size()) + 1.0;
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += ranks[i] * ranks[i];
        c += (top - ranks[i]) * (top - ranks[i]);
    }
    return CucconiScale(a.size(), b.size())(s, c);
}

Cucconi cucconi(std::span<const double> a, std::span<const double> b, std::size_t permutations, std::uint64_t seed)
{
    Cucconi r;
    r.c = cucconi_statistic(a, b);
    r.permutations = permutations;
    if (permutations == 0) {
        r.p_value = 1.0;
        return r;
    }
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = mid_ranks(pooled);
    const std::size_t N = pooled.size(), n1 = a.size();
    const double top = static_cast<double>(N) + 1.0;
    const CucconiScale scale(n1, b.size());
    const double threshold = r.c - 1e-12 * std::max(1.0, std::abs(r.c));

    std::vector<char> exceed(permutations, 0);
    parallel_for(permutations, [&](std::size_t p) {
        Rng rng = Rng::for_stream(seed, p);
        std::vector<double> work = ranks;
        double s = 0.0, c = 0.0;
        for (std::size_t i = 0; i < n1; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(N - i));
            std::swap(work[i], work[j]);
            s += work[i] * work[i];
            c += (top - work[i]) * (top - work[i]);
        }
        exceed[p] = scale(s, c) >= threshold;
    });
    const auto count = static_cast<double>(std::count(exceed.begin(), exceed.end(), 1));
    r.p_value = (1.0 + count) / (1.0 + static_cast<double>(permutations));
    return r;
}

namespace {

void require_labels(std::span<const double> scores, std::span<const int> labels)
{
    if (scores.size() != labels.size())
        throw ValidationError("scores and labels differ in length");
    bool pos = false, neg = false;
    for (int l : labels) {
        if (l != 0 && l != 1)
            throw ValidationError("labels must be 0 or 1");
        (l ? pos : neg) = true;
    }
    if (!pos || !neg)
        throw ValidationError("roc needs both labels present");
}

} // namespace

double roc_auc(std::span<const double> scores, std::span<const int> labels)
{
    require_labels(scores, labels);
    const auto ranks = mid_ranks(scores);
    double rank_sum = 0.0, npos = 0.0, nneg = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        if (labels[i]) {
            rank_sum += ranks[i];
            npos += 1.0;
        } else {
            nneg += 1.0;
        }
    }
    return (rank_sum - npos * (npos + 1.0) / 2.0) / (npos * nneg);
}

std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels)
{
    require_labels(scores, labels);
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    double npos = 0.0, nneg = 0.0;
    for (int l : labels)
        (l ? npos : nneg) += 1.0;
    std::vector<RocPoint> pts{{std::numeric_limits<double>::infinity(), 0.0, 0.0}};
    double tp = 0.0, fp = 0.0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (labels[order[j]] ? tp : fp) += 1.0;
            ++j;
        }
        pts.push_back({scores[order[i]], fp / nneg, tp / npos});
        i = j;
    }
    return pts;
}

KnnResult knn_classify(const std::vector<std::vector<double>>& features, std::span<const int> labels,
                       std::size_t k, bool leave_one_out)
{
    const std::size_t n = features.size();
    if (labels.size() != n)
        throw ValidationError("features and labels differ in length");
    if (k == 0 || k >= n)
        throw ValidationError("knn needs 1 <= k < n");
    const std::size_t d = features.front().size();
    for (const auto& row : features)
        if (row.size() != d)
            throw ValidationError("ragged feature matrix");
    for (int l : labels)
        if (l != 0 && l != 1)
            throw ValidationError("labels must be 0 or 1");

    std::vector<std::vector<double>> z(n, std::vector<double>(d, 0.0));
    for (std::size_t f = 0; f < d; ++f) {
        double mean = 0.0;
        for (const auto& row : features)
            mean += row[f];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& row : features)
            var += (row[f] - mean) * (row[f] - mean);
        const double sd = std::sqrt(var / static_cast<double>(n));
        if (sd == 0.0)
            continue;
        for (std::size_t i = 0; i < n; ++i)
            z[i][f] = (features[i][f] - mean) / sd;
    }

    KnnResult r;
    r.predictions.resize(n);
    r.scores.resize(n);
    std::vector<std::pair<double, std::size_t>> dist;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        dist.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (leave_one_out && j == i)
                continue;
            double s = 0.0;
            for (std::size_t f = 0; f < d; ++f)
                s += (z[i][f] - z[j][f]) * (z[i][f] - z[j][f]);
            dist.emplace_back(s, j == i ? 0 : j + 1);
        }
        std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
        std::size_t ones = 0;
        for (std::size_t t = 0; t < k; ++t) {
            const std::size_t j = dist[t].second == 0 ? i : dist[t].second - 1;
            ones += labels[j] == 1;
        }
        const std::size_t nearest = dist[0].second == 0 ? i : dist[0].second - 1;
        r.scores[i] = static_cast<double>(ones) / static_cast<double>(k);
        if (2 * ones > k)
            r.predictions[i] = 1;
        else if (2 * ones < k)
            r.predictions[i] = 0;
        else
            r.predictions[i] = labels[nearest];
        correct += r.predictions[i] == labels[i];
    }
    r.accuracy = static_cast<double>(correct) / static_cast<double>(n);
    const bool both = std::any_of(labels.begin(), labels.end(), [](int l) { return l == 1; }) &&
                      std::any_of(labels.begin(), labels.end(), [](int l) { return l == 0; });
    r.auc = both ? roc_auc(r.scores, labels) : 0.5;
    return r;
}

Summary summarize(std::span<const double> values)
{
    if (values.empty())
        throw ValidationError("summary of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    Summary s;
    s.n = sorted.size();
    s.mean = mean_of(sorted);
    s.sd = s.n > 1 ? std::sqrt(ss_of(sorted, s.mean) / static_cast<double>(s.n - 1)) : 0.0;
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile7(sorted, 0.25);
    s.median = quantile7(sorted, 0.5);
    s.q3 = quantile7(sorted, 0.75);
    return s;
}

PowerLaw fit_power_law(std::span<const double> xs, std::span<const double> ys)
{
    if (xs.size() != ys.size())
        throw ValidationError("paired samples differ in length");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] > 0.0 && ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    const LinearFit f = ols(lx, ly);
    return {std::exp(f.intercept), f.slope, f.r_squared};
}

} // namespace cxlab

#pragma once
//
// Reproducible experiments: the property suite, the Schatten threshold scan,
// potential decay, the factorization check and the Schwartz coefficient bound.
// Every run returns data records plus named checks; a run passes iff all of its
// checks pass.
//

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cocycle.hpp"
#include "kernels.hpp"
#include "multipliers.hpp"
#include "parallel.hpp"
#include "reference.hpp"
#include "sampling.hpp"
#include "schatten.hpp"
#include "serialize.hpp"
#include "torus_element.hpp"

namespace nctorus {

inline constexpr std::size_t max_box_points = 5000;

struct ExperimentConfig {
    ThetaMatrix theta = default_theta(2);
    std::vector<int> n_grid{4, 6, 8, 10};
    double alpha1 = 1.0;
    double alpha2 = 1.0;
    std::vector<double> r_grid; // empty: {1.1 r*, 1.0, 2.0}
    double s_margin = 0.5;
    std::uint64_t seed = 42;
    double alpha = 2.0;        // decay: potential order
    std::optional<double> s0;  // schwartz: defaults to d + 1
    std::string out;           // empty: stdout
    std::string format = "csv";

    int dim() const { return int(theta.dim()); }
    double r_star() const { return critical_exponent(dim(), alpha1, alpha2); }
    double schwartz_s0() const { return s0.value_or(double(dim() + 1)); }

    std::vector<double> effective_r_grid() const
    {
        if (!r_grid.empty())
            return r_grid;
        return {1.1 * r_star(), 1.0, 2.0};
    }

    void validate() const
    {
        if (n_grid.empty())
            throw ValidationError("N_grid must not be empty");
        for (std::size_t i = 0; i < n_grid.size(); ++i) {
            if (n_grid[i] < 0)
                throw ValidationError("N_grid entries must be >= 0");
            if (i > 0 && n_grid[i] <= n_grid[i - 1])
                throw ValidationError("N_grid must be strictly increasing");
        }
        for (double r : r_grid)
            if (!(r > 0.0))
                throw ValidationError("r_grid entries must be > 0");
        if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0))
            throw ValidationError("alpha1 and alpha2 must be >= 0");
        if (!(s_margin >= 0.0))
            throw ValidationError("s_margin must be >= 0");
        if (format != "csv" && format != "json")
            throw ValidationError("format must be csv or json, got " + format);
    }
};

inline ExperimentConfig config_from_json(const json& doc, ExperimentConfig cfg = {})
{
    if (!doc.is_object())
        throw ValidationError("config must be a JSON object");
    if (doc.contains("theta"))
        cfg.theta = theta_from_json(doc);
    else if (doc.contains("d"))
        cfg.theta = default_theta(doc["d"].get<std::size_t>());
    if (doc.contains("N_grid"))
        cfg.n_grid = doc["N_grid"].get<std::vector<int>>();
    if (doc.contains("alpha1"))
        cfg.alpha1 = doc["alpha1"].get<double>();
    if (doc.contains("alpha2"))
        cfg.alpha2 = doc["alpha2"].get<double>();
    if (doc.contains("r_grid"))
        cfg.r_grid = doc["r_grid"].get<std::vector<double>>();
    if (doc.contains("s_margin"))
        cfg.s_margin = doc["s_margin"].get<double>();
    if (doc.contains("seed"))
        cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("alpha"))
        cfg.alpha = doc["alpha"].get<double>();
    if (doc.contains("s0"))
        cfg.s0 = doc["s0"].get<double>();
    if (doc.contains("out"))
        cfg.out = doc["out"].get<std::string>();
    if (doc.contains("format"))
        cfg.format = doc["format"].get<std::string>();
    return cfg;
}

struct Check {
    std::string name;
    double value = 0.0;     // observed error / ratio / change
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

inline Check make_check(std::string name, double value, double tolerance, std::string detail = {})
{
    return {std::move(name), value, tolerance, value <= tolerance, std::move(detail)};
}

inline bool all_passed(const std::vector<Check>& checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void print_checks(std::ostream& os, const std::vector<Check>& checks)
{
    for (const auto& c : checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << format_double(c.value)
           << "  tol=" << format_double(c.tolerance);
        if (!c.detail.empty())
            os << "  (" << c.detail << ")";
        os << '\n';
    }
}

inline json checks_to_json(const std::vector<Check>& checks)
{
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                       {"passed", c.passed}, {"detail", c.detail}});
    return arr;
}

namespace detail {

inline double relative_change(double from, double to)
{
    return std::abs(to - from) / std::max(std::abs(from), std::numeric_limits<double>::min());
}

inline double elapsed_ms(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

inline void require_box_size(std::size_t dim, int radius)
{
    const LatticeBox box(dim, radius);
    if (box.cardinality() > max_box_points)
        throw ValidationError("box (2N+1)^d = " + std::to_string(box.cardinality()) + " for N="
                              + std::to_string(radius) + " exceeds the limit of "
                              + std::to_string(max_box_points) + " points");
}

// Decay exponents of the random kernel used by scan/factor: alpha_i + d/2 + margin.
inline std::pair<double, double> kernel_envelope(const ExperimentConfig& cfg)
{
    const double half_d = 0.5 * cfg.dim();
    return {cfg.alpha1 + half_d + cfg.s_margin, cfg.alpha2 + half_d + cfg.s_margin};
}

} // namespace detail

// ---------------------------------------------------------------------------
// scan

struct ScanRecord {
    int n = 0;
    double r = 0.0;
    double r_star = 0.0;
    double s_r_norm = 0.0;
    double weak_r_norm = 0.0;
    double sobolev_norm = 0.0;
    double wall_ms = 0.0;
    bool at_threshold = false;
};

struct ScanResult {
    std::vector<ScanRecord> records;
    std::vector<Check> checks;
};

inline constexpr double stabilization_tolerance = 0.05;
inline constexpr double hilbert_schmidt_tolerance = 1e-12;

inline bool is_at_threshold(double r, double r_star) { return std::abs(r - r_star) <= 1e-12 * r_star; }

/// For each N: random kernel in H^{alpha1, alpha2}, one SVD of T_k, then S_r and
/// weak S_r norms for every r in the grid.
inline ScanResult run_theorem_scan(const ExperimentConfig& cfg)
{
    cfg.validate();
    const std::size_t dim = cfg.theta.dim();
    for (int n : cfg.n_grid)
        detail::require_box_size(dim, n);
    const double r_star = cfg.r_star();
    const auto r_grid = cfg.effective_r_grid();
    const auto [s1, s2] = detail::kernel_envelope(cfg);
    const ReducedTheta theta(cfg.theta);

    struct PerN {
        std::vector<ScanRecord> records;
        double hs_error = 0.0;
    };
    std::vector<PerN> per_n(cfg.n_grid.size());

    parallel_for(cfg.n_grid.size(), [&](std::size_t idx) {
        const int n = cfg.n_grid[idx];
        const auto t0 = std::chrono::steady_clock::now();
        const NCKernel k = random_kernel(theta, n, s1, s2, cfg.seed);
        const double sob = mixed_sobolev_norm(k, cfg.alpha1, cfg.alpha2);
        const SingularSpectrum mu = singular_values(kernel_matrix(k));
        const double shared_ms = detail::elapsed_ms(t0);
        per_n[idx].hs_error = detail::relative_change(l2_norm(k), schatten_norm(mu, 2.0));
        for (double r : r_grid) {
            const auto t1 = std::chrono::steady_clock::now();
            ScanRecord rec;
            rec.n = n;
            rec.r = r;
            rec.r_star = r_star;
            rec.s_r_norm = schatten_norm(mu, r);
            rec.weak_r_norm = weak_norm(mu, r);
            rec.sobolev_norm = sob;
            rec.at_threshold = is_at_threshold(r, r_star);
            rec.wall_ms = shared_ms + detail::elapsed_ms(t1);
            per_n[idx].records.push_back(rec);
        }
    });

    ScanResult result;
    double hs_worst = 0.0;
    for (const auto& p : per_n) {
        result.records.insert(result.records.end(), p.records.begin(), p.records.end());
        hs_worst = std::max(hs_worst, p.hs_error);
    }
    std::sort(result.records.begin(), result.records.end(), [](const ScanRecord& a, const ScanRecord& b) {
        return a.n != b.n ? a.n < b.n : a.r < b.r;
    });

    bool r_star_ok = true;
    for (const auto& rec : result.records)
        r_star_ok = r_star_ok && rec.r_star == critical_exponent(cfg.dim(), cfg.alpha1, cfg.alpha2);
    result.checks.push_back(make_check("r_star_column", r_star_ok ? 0.0 : 1.0, 0.0,
                                       "r* = " + format_double(r_star)));
    result.checks.push_back(make_check("hilbert_schmidt", hs_worst, hilbert_schmidt_tolerance,
                                       "||T_k||_S2 vs ||k||_L2, worst over N"));

    auto norms_for = [&](double r) {
        std::vector<double> v;
        for (const auto& rec : result.records)
            if (rec.r == r)
                v.push_back(rec.s_r_norm);
        return v;
    };
    for (double r : r_grid) {
        const auto v = norms_for(r);
        double worst_drop = 0.0;
        for (std::size_t i = 1; i < v.size(); ++i)
            worst_drop = std::max(worst_drop, (v[i - 1] - v[i]) / v[i - 1]);
        result.checks.push_back(make_check("monotone_truncation r=" + format_double(r), worst_drop, 1e-12,
                                           "largest relative decrease as N grows"));
        if (r > r_star && !is_at_threshold(r, r_star) && v.size() >= 2) {
            const double change = detail::relative_change(v[v.size() - 2], v.back());
            result.checks.push_back(make_check(
                "stabilization r=" + format_double(r), change, stabilization_tolerance,
                "S_r norm change N=" + std::to_string(cfg.n_grid[cfg.n_grid.size() - 2]) + " -> N="
                    + std::to_string(cfg.n_grid.back())));
        }
    }
    return result;
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRecord>& records)
{
    os << "N,r,r_star,s_r_norm,weak_r_norm,sobolev_norm,wall_ms\n";
    for (const auto& rec : records)
        os << rec.n << ',' << format_double(rec.r) << ',' << format_double(rec.r_star) << ','
           << format_double(rec.s_r_norm) << ',' << format_double(rec.weak_r_norm) << ','
           << format_double(rec.sobolev_norm) << ',' << format_double(rec.wall_ms) << '\n';
}

inline json scan_to_json(const ScanResult& res)
{
    json recs = json::array();
    for (const auto& rec : res.records)
        recs.push_back({{"N", rec.n}, {"r", rec.r}, {"r_star", rec.r_star}, {"s_r_norm", rec.s_r_norm},
                        {"weak_r_norm", rec.weak_r_norm}, {"sobolev_norm", rec.sobolev_norm},
                        {"wall_ms", rec.wall_ms}, {"at_threshold", rec.at_threshold}});
    return {{"records", std::move(recs)}, {"checks", checks_to_json(res.checks)}};
}

// ---------------------------------------------------------------------------
// decay

struct DecayRecord {
    int n = 0;
    double p = 0.0;
    double weak_norm = 0.0;
    double slope = 0.0;
    double residual = 0.0;
    double s_p_norm = 0.0; // truncated S_p sum; may grow without bound at p = d/alpha
};

struct DecayResult {
    std::vector<DecayRecord> records;
    std::vector<Check> checks;
};

inline constexpr double decay_slope_tolerance = 0.1;
inline constexpr double weak_norm_tolerance = 0.2;

/// Spectrum of J^{-alpha} on each box (sorted diagonal), its weak S_{d/alpha}
/// quasinorm and fitted log-log slope (target -alpha/d).
inline DecayResult run_potential_decay(int dim, double alpha, const std::vector<int>& n_grid)
{
    if (!(alpha > 0.0))
        throw ValidationError("decay requires alpha > 0, got " + std::to_string(alpha));
    if (dim < 1)
        throw ValidationError("decay requires d >= 1");
    const double p = double(dim) / alpha;
    DecayResult res;
    for (int n : n_grid) {
        const SingularSpectrum mu = multiplier_spectrum(bessel_symbol(-alpha), LatticeBox(std::size_t(dim), n));
        DecayRecord rec;
        rec.n = n;
        rec.p = p;
        rec.weak_norm = weak_norm(mu, p);
        rec.s_p_norm = schatten_norm(mu, p);
        if (mu.size() >= 8) {
            const DecayFit fit = decay_exponent(mu);
            rec.slope = fit.slope;
            rec.residual = fit.residual;
        } else {
            rec.slope = std::nan("");
            rec.residual = std::nan("");
        }
        res.records.push_back(rec);
    }
    const double target = -alpha / dim;
    if (!res.records.empty() && std::isfinite(res.records.back().slope))
        res.checks.push_back(make_check("decay_slope", std::abs(res.records.back().slope - target),
                                        decay_slope_tolerance,
                                        "slope " + format_double(res.records.back().slope) + " vs "
                                            + format_double(target) + " at N="
                                            + std::to_string(res.records.back().n)));
    if (res.records.size() >= 2) {
        const auto& a = res.records[res.records.size() - 2];
        const auto& b = res.records.back();
        res.checks.push_back(make_check("weak_norm_stability", detail::relative_change(a.weak_norm, b.weak_norm),
                                        weak_norm_tolerance,
                                        "weak S_p change N=" + std::to_string(a.n) + " -> N="
                                            + std::to_string(b.n)));
    }
    return res;
}

inline void write_decay_csv(std::ostream& os, const std::vector<DecayRecord>& records)
{
    os << "N,p,weak_norm,slope,residual,s_p_norm\n";
    for (const auto& r : records)
        os << r.n << ',' << format_double(r.p) << ',' << format_double(r.weak_norm) << ','
           << format_double(r.slope) << ',' << format_double(r.residual) << ','
           << format_double(r.s_p_norm) << '\n';
}

inline json decay_to_json(const DecayResult& res)
{
    json recs = json::array();
    for (const auto& r : res.records)
        recs.push_back({{"N", r.n}, {"p", r.p}, {"weak_norm", r.weak_norm}, {"slope", r.slope},
                        {"residual", r.residual}, {"s_p_norm", r.s_p_norm}});
    return {{"records", std::move(recs)}, {"checks", checks_to_json(res.checks)}};
}

// ---------------------------------------------------------------------------
// factorization

inline constexpr double factorization_tolerance = 1e-12;

/// ||A - B||_F / ||A||_F
inline double relative_frobenius(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const double na = a.norm();
    return (a - b).norm() / (na > 0.0 ? na : 1.0);
}

/// Relative Frobenius gap between J^{alpha1} T_k and T_{(J^{alpha1} (x) J^{alpha2}) k} J^{-alpha2}.
inline double factorization_error(const NCKernel& k, double alpha1, double alpha2)
{
    const LatticeBox& box = k.box1();
    const ComplexMatrix lhs = multiplier_matrix(bessel_symbol(alpha1), box).entries * kernel_matrix(k).entries;
    const ComplexMatrix rhs = kernel_matrix(sobolev_lift(k, alpha1, alpha2)).entries
                              * multiplier_matrix(bessel_symbol(-alpha2), box).entries;
    return relative_frobenius(lhs, rhs);
}

/// Relative Frobenius gap between the matrix of flip(k)* and the adjoint of T_k.
inline double adjoint_error(const NCKernel& k)
{
    const ComplexMatrix km = kernel_matrix(k).entries;
    return relative_frobenius(km.adjoint(), kernel_matrix(flip_adjoint(k)).entries);
}

struct FactorRecord {
    int n = 0;
    double factorization_error = 0.0;
    double adjoint_error = 0.0;
};

struct FactorResult {
    std::vector<FactorRecord> records;
    std::vector<Check> checks;
};

inline FactorResult run_factorization_check(const ExperimentConfig& cfg)
{
    cfg.validate();
    for (int n : cfg.n_grid)
        detail::require_box_size(cfg.theta.dim(), n);
    const auto [s1, s2] = detail::kernel_envelope(cfg);
    const ReducedTheta theta(cfg.theta);
    FactorResult res;
    res.records.resize(cfg.n_grid.size());
    parallel_for(cfg.n_grid.size(), [&](std::size_t i) {
        const NCKernel k = random_kernel(theta, cfg.n_grid[i], s1, s2, cfg.seed);
        res.records[i] = {cfg.n_grid[i], factorization_error(k, cfg.alpha1, cfg.alpha2), adjoint_error(k)};
    });
    double f = 0.0, a = 0.0;
    for (const auto& r : res.records) {
        f = std::max(f, r.factorization_error);
        a = std::max(a, r.adjoint_error);
    }
    res.checks.push_back(make_check("factorization", f, factorization_tolerance,
                                    "J^a1 T_k = T_k1 T_k2, worst over N"));
    res.checks.push_back(make_check("flip_adjoint", a, factorization_tolerance, "T_flip(k)* = T_k^*"));
    return res;
}

inline void write_factor_csv(std::ostream& os, const std::vector<FactorRecord>& records)
{
    os << "N,factorization_error,adjoint_error\n";
    for (const auto& r : records)
        os << r.n << ',' << format_double(r.factorization_error) << ',' << format_double(r.adjoint_error) << '\n';
}

inline json factor_to_json(const FactorResult& res)
{
    json recs = json::array();
    for (const auto& r : res.records)
        recs.push_back({{"N", r.n}, {"factorization_error", r.factorization_error},
                        {"adjoint_error", r.adjoint_error}});
    return {{"records", std::move(recs)}, {"checks", checks_to_json(res.checks)}};
}

// ---------------------------------------------------------------------------
// schwartz

struct SchwartzRecord {
    int n = 0;
    double s0 = 0.0;
    double lifted_norm = 0.0;
    double worst_ratio = 0.0;
};

struct SchwartzResult {
    std::vector<SchwartzRecord> records;
    std::vector<Check> checks;
};

/// Random smooth h (envelope exponents alpha_i + s0 + d/2 + margin) and the
/// worst |b_{m,n}| / bound over the box.
inline SchwartzResult run_schwartz_bound(const ExperimentConfig& cfg)
{
    cfg.validate();
    const double s0 = cfg.schwartz_s0();
    if (!(s0 > cfg.dim()))
        throw ValidationError("s0 must exceed d=" + std::to_string(cfg.dim()) + ", got " + format_double(s0));
    for (int n : cfg.n_grid)
        detail::require_box_size(cfg.theta.dim(), n);
    const ReducedTheta theta(cfg.theta);
    const double half_d = 0.5 * cfg.dim();
    SchwartzResult res;
    double worst = 0.0;
    for (int n : cfg.n_grid) {
        const NCKernel h = random_kernel(theta, n, cfg.alpha1 + s0 + half_d + cfg.s_margin,
                                         cfg.alpha2 + s0 + half_d + cfg.s_margin, cfg.seed);
        const SchwartzReport rep = schwartz_coefficients(h, cfg.alpha1, cfg.alpha2, s0);
        res.records.push_back({n, s0, rep.lifted_norm, rep.worst_ratio});
        worst = std::max(worst, rep.worst_ratio);
    }
    res.checks.push_back(make_check("schwartz_bound", worst, 1.0 + schwartz_slack,
                                    "worst |b_mn| / bound, s0 = " + format_double(s0)));
    return res;
}

inline void write_schwartz_csv(std::ostream& os, const std::vector<SchwartzRecord>& records)
{
    os << "N,s0,lifted_norm,worst_ratio\n";
    for (const auto& r : records)
        os << r.n << ',' << format_double(r.s0) << ',' << format_double(r.lifted_norm) << ','
           << format_double(r.worst_ratio) << '\n';
}

inline json schwartz_to_json(const SchwartzResult& res)
{
    json recs = json::array();
    for (const auto& r : res.records)
        recs.push_back({{"N", r.n}, {"s0", r.s0}, {"lifted_norm", r.lifted_norm}, {"worst_ratio", r.worst_ratio}});
    return {{"records", std::move(recs)}, {"checks", checks_to_json(res.checks)}};
}

// ---------------------------------------------------------------------------
// property suite

using SigmaFunction = std::function<cplx(const ReducedTheta&, const MultiIndex&, const MultiIndex&)>;

struct SuiteOptions {
    std::uint64_t seed = 42;
    int trials = 20;
    // Replaces sigma in the cocycle checks only; lets tests feed a corrupted cocycle.
    SigmaFunction sigma_override;
};

namespace detail {

inline double rel_err(double diff, double scale) { return diff / std::max(scale, 1.0); }

} // namespace detail

/// Runs the algebraic and analytic invariants of every module under `theta` and
/// reports the worst observed error of each.
inline std::vector<Check> run_property_suite(const ThetaMatrix& theta_matrix, const SuiteOptions& opt = {})
{
    const std::size_t dim = theta_matrix.dim();
    const ReducedTheta theta(theta_matrix);
    const SigmaFunction sig = opt.sigma_override
                                  ? opt.sigma_override
                                  : SigmaFunction([](const ReducedTheta& t, const MultiIndex& m,
                                                     const MultiIndex& n) { return sigma(t, m, n); });
    SplitMix64 rng(opt.seed);
    std::vector<Check> checks;
    const int trials = std::max(1, opt.trials);

    // cocycle
    {
        double unimod = 0.0, bichar = 0.0, cocyc = 0.0;
        for (int t = 0; t < 5 * trials; ++t) {
            const MultiIndex m = random_index(rng, dim, 6), m2 = random_index(rng, dim, 6);
            const MultiIndex n = random_index(rng, dim, 6), n2 = random_index(rng, dim, 6);
            const MultiIndex p = random_index(rng, dim, 6);
            unimod = std::max(unimod, std::abs(std::abs(sig(theta, m, n)) - 1.0));
            bichar = std::max(bichar, std::abs(sig(theta, m + m2, n) - sig(theta, m, n) * sig(theta, m2, n)));
            bichar = std::max(bichar, std::abs(sig(theta, m, n + n2) - sig(theta, m, n) * sig(theta, m, n2)));
            cocyc = std::max(cocyc, std::abs(sig(theta, m, n) * sig(theta, m + n, p)
                                             - sig(theta, n, p) * sig(theta, m, n + p)));
        }
        checks.push_back(make_check("cocycle_unimodular", unimod, 1e-14));
        checks.push_back(make_check("cocycle_bicharacter", bichar, 1e-12));
        checks.push_back(make_check("cocycle_identity", cocyc, 1e-12));
    }

    // commutation relation U_k U_j = exp(2 pi i theta_kj) U_j U_k
    {
        double worst = 0.0;
        const LatticeBox b1(dim, 1);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t j = 0; j < dim; ++j) {
                MultiIndex ek(dim), ej(dim);
                ek[k] = 1;
                ej[j] = 1;
                const TorusElement uk = monomial(theta, ek, b1), uj = monomial(theta, ej, b1);
                const TorusElement lhs = twisted_convolve(uk, uj);
                const TorusElement rhs = unit_phase(theta_matrix(k, j)) * twisted_convolve(uj, uk);
                worst = std::max(worst, element_distance(lhs, rhs));
            }
        checks.push_back(make_check("commutation_relation", worst, 1e-12));
    }

    // algebra axioms
    {
        const int max_radius = dim <= 2 ? 2 : 1;
        double assoc = 0.0, trace_prop = 0.0, anti = 0.0, plancherel = 0.0, leibniz = 0.0, ip = 0.0;
        for (int t = 0; t < trials; ++t) {
            auto rbox = [&] { return LatticeBox(dim, int(rng() % std::uint64_t(max_radius + 1))); };
            const TorusElement f = random_element(theta, rbox(), rng);
            const TorusElement g = random_element(theta, rbox(), rng);
            const TorusElement h = random_element(theta, rbox(), rng);
            const TorusElement fg = twisted_convolve(f, g);
            const TorusElement a = twisted_convolve(fg, h);
            const TorusElement b = twisted_convolve(f, twisted_convolve(g, h));
            assoc = std::max(assoc, detail::rel_err(element_distance(a, b), l2_norm(a)));
            const double scale = l2_norm(f) * l2_norm(g);
            trace_prop = std::max(trace_prop, detail::rel_err(std::abs(trace(fg) - trace(twisted_convolve(g, f))), scale));
            anti = std::max(anti, detail::rel_err(element_distance(involution(fg),
                                                                   twisted_convolve(involution(g), involution(f))),
                                                  l2_norm(fg)));
            const cplx pos = trace(twisted_convolve(involution(f), f));
            const double sq = l2_norm(f) * l2_norm(f);
            plancherel = std::max({plancherel, detail::rel_err(std::abs(pos - sq), sq),
                                   pos.real() < 0.0 ? -pos.real() : 0.0});
            ip = std::max(ip, detail::rel_err(std::abs(inner_product(f, g) - trace(twisted_convolve(involution(g), f))),
                                              scale));
            for (std::size_t j = 1; j <= dim; ++j) {
                const TorusElement lhs = partial_derivative(j, fg);
                const TorusElement rhs =
                    twisted_convolve(partial_derivative(j, f), g) + twisted_convolve(f, partial_derivative(j, g));
                leibniz = std::max(leibniz, detail::rel_err(element_distance(lhs, rhs), l2_norm(lhs)));
            }
        }
        checks.push_back(make_check("associativity", assoc, 1e-10));
        checks.push_back(make_check("trace_property", trace_prop, 1e-12));
        checks.push_back(make_check("anti_homomorphism", anti, 1e-12));
        checks.push_back(make_check("plancherel_positivity", plancherel, 1e-12));
        checks.push_back(make_check("inner_product_routes", ip, 1e-12));
        checks.push_back(make_check("leibniz", leibniz, 1e-10));
    }

    // multipliers
    {
        double alg = 0.0, inv = 0.0;
        const LatticeBox box(dim, dim <= 2 ? 3 : 2);
        for (int t = 0; t < trials; ++t) {
            const double a1 = rng.uniform(-3.0, 3.0), a2 = rng.uniform(-3.0, 3.0);
            const TorusElement x = random_element(theta, box, rng);
            const auto g = bessel_symbol(a1), h = riesz_symbol(a2);
            const TorusElement lhs = apply_multiplier(g, apply_multiplier(h, x));
            const TorusElement rhs = apply_multiplier(product_symbol(g, h), x);
            alg = std::max(alg, detail::rel_err(element_distance(lhs, rhs), l2_norm(lhs)));
            const ComplexMatrix id = multiplier_matrix(bessel_symbol(a1), box).entries
                                     * multiplier_matrix(bessel_symbol(-a1), box).entries;
            inv = std::max(inv, (id - ComplexMatrix::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff());
        }
        checks.push_back(make_check("multiplier_algebra", alg, 1e-12));
        checks.push_back(make_check("bessel_inverse", inv, 1e-13));
    }

    // kernels
    {
        const int radius = dim <= 2 ? 2 : 1;
        const LatticeBox box(dim, radius);
        double oracle = 0.0, fact = 0.0, adj = 0.0, hs = 0.0, unitary = 0.0, bessel = 0.0, schwartz = 0.0;
        for (int t = 0; t < trials; ++t) {
            const NCKernel k = random_dense_kernel(theta, box, rng);
            const TorusElement x = random_element(theta, box, rng);
            const TorusElement closed = apply_kernel(k, x);
            const TorusElement def = reference::partial_trace_action(k, x);
            oracle = std::max(oracle, element_distance(closed, def) / std::max(1.0, l2_norm(def)));

            const double a1 = rng.uniform(0.0, 3.0), a2 = rng.uniform(0.0, 3.0);
            fact = std::max(fact, factorization_error(k, a1, a2));
            adj = std::max(adj, adjoint_error(k));

            const OperatorMatrix km = kernel_matrix(k);
            const SingularSpectrum mu = singular_values(km);
            hs = std::max(hs, detail::relative_change(l2_norm(k), schatten_norm(mu, 2.0)));

            ComplexMatrix phases = ComplexMatrix::Zero(km.side(), km.side());
            for (std::size_t i = 0; i < box.cardinality(); ++i) {
                const MultiIndex p = box.point(i);
                phases(Eigen::Index(i), Eigen::Index(i)) = sigma(theta, p, -p);
            }
            const SingularSpectrum mu2 = singular_values(ComplexMatrix(km.entries * phases));
            for (std::size_t i = 0; i < mu.size(); ++i)
                unitary = std::max(unitary, std::abs(mu[i] - mu2[i]) / mu[0]);

            const double a = rng.uniform(0.0, 3.0);
            bessel = std::max(bessel, (kernel_matrix(bessel_kernel(a, box, theta)).entries
                                       - multiplier_matrix(bessel_symbol(-a), box).entries)
                                          .cwiseAbs()
                                          .maxCoeff());

            const SchwartzReport rep = schwartz_coefficients(k, a1, a2, double(dim + 1));
            schwartz = std::max(schwartz, rep.worst_ratio);
        }
        checks.push_back(make_check("kernel_oracle", oracle, 1e-11, "closed form vs (id x tau)(k(1 x x))"));
        checks.push_back(make_check("factorization", fact, factorization_tolerance));
        checks.push_back(make_check("flip_adjoint", adj, factorization_tolerance));
        checks.push_back(make_check("hilbert_schmidt", hs, hilbert_schmidt_tolerance));
        checks.push_back(make_check("unitary_invariance", unitary, 1e-11));
        checks.push_back(make_check("bessel_kernel", bessel, 1e-13));
        checks.push_back(make_check("schwartz_bound", schwartz, 1.0 + schwartz_slack));
    }

    // Hoelder in Schatten ideals
    {
        double worst = 0.0;
        const double exps[] = {1.0, 2.0, 4.0};
        for (int t = 0; t < trials; ++t) {
            const auto n = Eigen::Index(2 + rng() % 19);
            const ComplexMatrix a = random_matrix(n, n, rng), b = random_matrix(n, n, rng);
            const double p2 = exps[t % 3];
            const double tt = holder_exponent(2.0, p2);
            const double lhs = schatten_norm(singular_values(ComplexMatrix(a * b)), tt);
            const double rhs = schatten_norm(singular_values(a), 2.0) * schatten_norm(singular_values(b), p2);
            worst = std::max(worst, lhs / rhs);
        }
        checks.push_back(make_check("holder", worst, 1.0 + 1e-10, "max ||AB||_t / (||A||_2 ||B||_p2)"));
    }
    return checks;
}

} // namespace nctorus

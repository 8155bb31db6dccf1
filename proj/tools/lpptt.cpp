// Command-line front end: simulation, Monte-Carlo estimation, Tracy-Widom
// and two-time evaluations, the exact finite-size formula, and the built-in
// verification suites.
//
// Artifact conventions: CSV for sweeps/grids, JSON for single evaluations
// and reports.  Every artifact embeds the full effective configuration
// (defaults included), so re-running a deterministic command from the
// embedded config reproduces the file byte for byte.  Exit codes: 0 success,
// 2 parameter errors, 3 accuracy/verification failures.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lpptt/airy.hpp"
#include "lpptt/errors.hpp"
#include "lpptt/finiten.hpp"
#include "lpptt/fredholm.hpp"
#include "lpptt/kernels.hpp"
#include "lpptt/lpp.hpp"
#include "lpptt/scaling.hpp"
#include "lpptt/twotime.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Resolve --out against the LPPTT_OUT_DIR environment variable: relative
// paths land in that directory, absolute paths and empty values pass through.
std::string resolve_out(const std::string& out) {
    if (out.empty()) return out;
    std::filesystem::path p(out);
    if (p.is_absolute()) return out;
    const char* dir = std::getenv("LPPTT_OUT_DIR");
    if (dir == nullptr || *dir == '\0') return out;
    return (std::filesystem::path(dir) / p).string();
}

// Write the artifact to --out (summary goes to stdout), or print the
// artifact itself to stdout (summary to stderr) when no --out was given.
void emit(const std::string& out, const std::string& artifact,
          const std::string& summary) {
    if (out.empty()) {
        std::cout << artifact;
        if (!artifact.empty() && artifact.back() != '\n') std::cout << '\n';
        std::cerr << summary << '\n';
        return;
    }
    const std::string path = resolve_out(out);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw lpptt::parameter_error("cannot open output file: " + path);
    f << artifact;
    if (!artifact.empty() && artifact.back() != '\n') f << '\n';
    f.close();
    std::cout << summary << "  -> " << path << '\n';
}

// ---------------------------------------------------------------------------
// simulate: one sampled field and its last-passage corner value.

struct SimulateOpts {
    double q = 0.25;
    std::int64_t rows = 100, cols = 100;
    std::uint64_t seed = 1, stream = 0;
    std::string table_out;  // optional CSV of the full passage table
    std::string out;
};

int run_simulate(const SimulateOpts& o) {
    const lpptt::PassageField field =
        lpptt::sample_field(o.q, o.rows, o.cols, o.seed, o.stream);
    const lpptt::PassageTable table = lpptt::last_passage(field);
    const std::int64_t corner = table.at(o.rows, o.cols);

    json config{{"command", "simulate"}, {"q", o.q},       {"rows", o.rows},
                {"cols", o.cols},        {"seed", o.seed}, {"stream", o.stream}};

    if (!o.table_out.empty()) {
        std::ostringstream csv;
        csv << "# config " << config.dump() << "\n";
        csv << "i,j,w,G\n";
        for (std::int64_t i = 1; i <= o.rows; ++i)
            for (std::int64_t j = 1; j <= o.cols; ++j)
                csv << i << ',' << j << ',' << field.weight(i, j) << ','
                    << table.at(i, j) << '\n';
        const std::string path = resolve_out(o.table_out);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw lpptt::parameter_error("cannot open output file: " + path);
        f << csv.str();
    }

    json artifact{{"command", "simulate"},
                  {"config", config},
                  {"result", json{{"G", corner}}}};
    emit(o.out, artifact.dump(2),
         "G(" + std::to_string(o.rows) + "," + std::to_string(o.cols) +
             ") = " + std::to_string(corner));
    return 0;
}

// ---------------------------------------------------------------------------
// mc-two-time: empirical joint CDF of the rescaled two-time pair.

struct McOpts {
    double q = 0.25, T = 100.0, t1 = 1.0, t2 = 2.0;
    double eta1 = 0.0, eta2 = 0.0;
    std::vector<double> xi1{0.0}, xi2{0.0};
    std::int64_t samples = 100000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

int run_mc_two_time(const McOpts& o) {
    const lpptt::ScalingConstants consts = lpptt::compute_constants(o.q);
    const lpptt::JointCdf cdf =
        lpptt::mc_joint_cdf(consts, o.T, o.t1, o.t2, o.eta1, o.eta2, o.xi1,
                            o.xi2, o.samples, o.seed, o.threads);

    json config{{"command", "mc-two-time"},
                {"q", o.q},
                {"T", o.T},
                {"t1", o.t1},
                {"t2", o.t2},
                {"eta1", o.eta1},
                {"eta2", o.eta2},
                {"xi1", o.xi1},
                {"xi2", o.xi2},
                {"samples", o.samples},
                {"seed", o.seed}};

    std::ostringstream csv;
    csv << "# config " << config.dump() << "\n";
    csv << "xi1,xi2,estimate,std_error,samples,seed\n";
    for (std::size_t i1 = 0; i1 < o.xi1.size(); ++i1)
        for (std::size_t i2 = 0; i2 < o.xi2.size(); ++i2) {
            const lpptt::McEstimate& e = cdf.cell(i1, i2);
            csv << fmt_double(o.xi1[i1]) << ',' << fmt_double(o.xi2[i2]) << ','
                << fmt_double(e.estimate) << ',' << fmt_double(e.std_error)
                << ',' << e.samples << ',' << e.seed << '\n';
        }
    emit(o.out, csv.str(),
         "mc-two-time: " + std::to_string(o.xi1.size() * o.xi2.size()) +
             " cells at T=" + fmt_double(o.T) +
             ", samples=" + std::to_string(o.samples));
    return 0;
}

// ---------------------------------------------------------------------------
// f2: Tracy-Widom GUE distribution values.

struct F2Opts {
    std::vector<double> xi{0.0};
    double L = 14.0;
    int nodes = 80;
    std::string out;
};

int run_f2(const F2Opts& o) {
    json config{
        {"command", "f2"}, {"xi", o.xi}, {"L", o.L}, {"nodes", o.nodes}};
    if (o.xi.size() == 1) {
        const double value = lpptt::tracy_widom_f2(o.xi[0], o.L, o.nodes);
        json artifact{{"command", "f2"},
                      {"config", config},
                      {"result", json{{"value", value}}}};
        if (o.out.empty()) {
            std::cout << fmt_double(value) << '\n';
            return 0;
        }
        emit(o.out, artifact.dump(2), "F2(" + fmt_double(o.xi[0]) + ") = " +
                                          fmt_double(value));
        return 0;
    }
    std::ostringstream csv;
    csv << "# config " << config.dump() << "\n";
    csv << "xi,value\n";
    for (double x : o.xi)
        csv << fmt_double(x) << ',' << fmt_double(lpptt::tracy_widom_f2(x, o.L, o.nodes))
            << '\n';
    emit(o.out, csv.str(), "f2: " + std::to_string(o.xi.size()) + " points");
    return 0;
}

// ---------------------------------------------------------------------------
// twotime: the limiting joint distribution by the K, Q, or dual route.

struct TwoTimeOpts {
    std::vector<double> xi1{0.0}, xi2{0.0};
    double eta1 = 0.0, eta2 = 0.0;
    double alpha = 1.0;
    double t1 = 0.0, t2 = 0.0;  // optional alternative to --alpha
    double L = 10.0;
    int nodes = 60;
    double radius = 2.0;
    int u_nodes = 64;
    double delta_margin = 1.0;
    std::string form = "k";
    int threads = 0;
    std::string out;
};

lpptt::TwoTimeResult eval_two_time(const TwoTimeOpts& o, double xi1, double xi2,
                                   lpptt::TwoTimeParams* used_params) {
    lpptt::TwoTimeParams params =
        (o.t1 > 0.0 || o.t2 > 0.0)
            ? lpptt::derived_params(o.t1, o.t2, o.eta1, o.eta2, xi1, xi2)
            : lpptt::params_from_scaled(xi1, o.eta1, xi2, o.eta2, o.alpha);
    params.delta = lpptt::choose_delta(params, o.delta_margin);
    if (used_params != nullptr) *used_params = params;
    const lpptt::ContourSpec contour{o.radius, o.u_nodes};
    if (o.form == "k")
        return lpptt::eval_k_form(params, contour, o.L, o.nodes, o.threads);
    if (o.form == "q")
        return lpptt::eval_q_form(params, contour, o.L, o.nodes, o.threads);
    if (o.form == "dual")
        return lpptt::eval_dual_form(params, contour, o.L, o.nodes, o.threads);
    throw lpptt::parameter_error("twotime: unknown --form " + o.form);
}

int run_twotime(const TwoTimeOpts& o) {
    json config{{"command", "twotime"},
                {"xi1", o.xi1},
                {"eta1", o.eta1},
                {"xi2", o.xi2},
                {"eta2", o.eta2},
                {"alpha", o.alpha},
                {"t1", o.t1},
                {"t2", o.t2},
                {"L", o.L},
                {"nodes", o.nodes},
                {"radius", o.radius},
                {"u_nodes", o.u_nodes},
                {"delta_margin", o.delta_margin},
                {"form", o.form}};

    if (o.xi1.size() == 1 && o.xi2.size() == 1) {
        lpptt::TwoTimeParams params;
        const lpptt::TwoTimeResult r =
            eval_two_time(o, o.xi1[0], o.xi2[0], &params);
        json artifact{
            {"command", "twotime"},
            {"config", config},
            {"params", json{{"xi1", params.xi1},
                            {"eta1", params.eta1},
                            {"xi2", params.xi2},
                            {"eta2", params.eta2},
                            {"alpha", params.alpha},
                            {"alpha_prime", params.alpha_prime},
                            {"delta_xi", params.delta_xi},
                            {"delta_eta", params.delta_eta},
                            {"delta", params.delta}}},
            {"value", r.value},
            {"imag_residue", r.imag_residue},
            {"grid", json{{"L", r.grid_L}, {"nodes", r.grid_nodes_per_side}}},
            {"contour", json{{"r", r.radius}, {"u_nodes", r.u_nodes}}}};
        emit(o.out, artifact.dump(2),
             "F_twotime = " + fmt_double(r.value) +
                 " (imag residue " + fmt_double(r.imag_residue) + ")");
        return 0;
    }

    std::ostringstream csv;
    csv << "# config " << config.dump() << "\n";
    csv << "xi1,xi2,value,imag_residue\n";
    for (double x1 : o.xi1)
        for (double x2 : o.xi2) {
            const lpptt::TwoTimeResult r = eval_two_time(o, x1, x2, nullptr);
            csv << fmt_double(x1) << ',' << fmt_double(x2) << ','
                << fmt_double(r.value) << ',' << fmt_double(r.imag_residue)
                << '\n';
        }
    emit(o.out, csv.str(),
         "twotime: " + std::to_string(o.xi1.size() * o.xi2.size()) + " cells");
    return 0;
}

// ---------------------------------------------------------------------------
// finite: the exact finite-size probability as a rational.

struct FiniteOpts {
    long m = 1, n = 1, M = 2, N = 2;
    long a = 1, A = 2;
    std::string q = "1/2";
    std::string out;
};

int run_finite(const FiniteOpts& o) {
    lpptt::FiniteCase cs;
    cs.q = lpptt::parse_rational(o.q);
    cs.m = o.m;
    cs.n = o.n;
    cs.M = o.M;
    cs.N = o.N;
    cs.a = o.a;
    cs.A = o.A;
    const lpptt::FiniteResult r = lpptt::finite_two_point(cs);
    const std::string p_exact = r.probability.get_str();
    const std::string marginal = r.u_one_determinant.get_str();

    json config{{"command", "finite"}, {"m", o.m}, {"n", o.n}, {"M", o.M},
                {"N", o.N},            {"a", o.a}, {"A", o.A}, {"q", o.q}};
    json artifact{{"command", "finite"},
                  {"config", config},
                  {"case", json{{"m", o.m},
                                {"n", o.n},
                                {"M", o.M},
                                {"N", o.N},
                                {"a", o.a},
                                {"A", o.A},
                                {"q", o.q}}},
                  {"P_exact", p_exact},
                  {"P_float", r.probability_double()},
                  {"marginal_exact", marginal},
                  {"marginal_float", r.u_one_determinant.get_d()}};
    if (o.out.empty()) {
        std::cout << p_exact << '\n';
        return 0;
    }
    emit(o.out, artifact.dump(2), p_exact);
    return 0;
}

// ---------------------------------------------------------------------------
// verify: named subsets of the acceptance checks.

struct VerifyOpts {
    std::string suite;
    std::int64_t samples = 10000;
    std::uint64_t seed = 20260822;
    int threads = 0;
    std::string out;
};

struct Check {
    std::string name;
    bool passed;
    double value;
    double tolerance;
    std::string detail;
};

class Verifier {
 public:
    void expect(const std::string& name, double value, double tolerance,
                const std::string& detail = "") {
        checks_.push_back({name, std::abs(value) < tolerance, value, tolerance,
                           detail});
    }
    void expect_true(const std::string& name, bool ok,
                     const std::string& detail = "") {
        checks_.push_back({name, ok, ok ? 1.0 : 0.0, 0.5, detail});
    }
    const std::vector<Check>& checks() const { return checks_; }
    int failed() const {
        int n = 0;
        for (const Check& c : checks_)
            if (!c.passed) ++n;
        return n;
    }

 private:
    std::vector<Check> checks_;
};

// Exhaustive-enumeration oracle for P[G(m,n) < a, G(M,N) < A]: any cell
// weight >= A forces G(M,N) >= A (every cell lies on some admissible path),
// so enumerating w in {0..A-1}^(M*N) is exact, with the geometric mass of
// each configuration accumulated as a rational.
lpptt::Rational enumerate_two_point(const lpptt::FiniteCase& cs) {
    const long cells = cs.M * cs.N;
    if (cs.A <= 0 || cs.a <= 0) return 0;
    std::vector<long> w(static_cast<std::size_t>(cells), 0);
    const lpptt::Rational one_minus_q = 1 - cs.q;
    lpptt::Rational total = 0;
    while (true) {
        // G by the growth recursion on this configuration.
        std::vector<long> g(static_cast<std::size_t>(cells), 0);
        for (long i = 1; i <= cs.M; ++i)
            for (long j = 1; j <= cs.N; ++j) {
                const long up = i > 1 ? g[static_cast<std::size_t>((i - 2) * cs.N + (j - 1))] : 0;
                const long left = j > 1 ? g[static_cast<std::size_t>((i - 1) * cs.N + (j - 2))] : 0;
                g[static_cast<std::size_t>((i - 1) * cs.N + (j - 1))] =
                    std::max(up, left) + w[static_cast<std::size_t>((i - 1) * cs.N + (j - 1))];
            }
        const long g_small = g[static_cast<std::size_t>((cs.m - 1) * cs.N + (cs.n - 1))];
        const long g_big = g[static_cast<std::size_t>((cs.M - 1) * cs.N + (cs.N - 1))];
        if (g_small < cs.a && g_big < cs.A) {
            long sum = 0;
            for (long x : w) sum += x;
            total += lpptt::rational_pow(one_minus_q, cells) *
                     lpptt::rational_pow(cs.q, sum);
        }
        // Next configuration in {0..A-1}^cells.
        long pos = 0;
        while (pos < cells && w[static_cast<std::size_t>(pos)] == cs.A - 1) {
            w[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == cells) break;
        ++w[static_cast<std::size_t>(pos)];
    }
    return total;
}

void verify_identities(Verifier& v, int threads) {
    for (double q : {0.1, 0.25, 0.5, 0.9}) {
        const lpptt::ScalingConstants c = lpptt::compute_constants(q);
        const double rq = std::sqrt(q);
        v.expect("c3/c0 = sqrt(q)/(1-sqrt(q)) at q=" + fmt_double(q),
                 c.c3 / c.c0 - rq / (1.0 - rq), 1e-13);
        v.expect("c1 = sqrt(q) c0^2 at q=" + fmt_double(q),
                 c.c1 - rq * c.c0 * c.c0, 1e-13);
        v.expect("c0 c4 = 1 - sqrt(q) at q=" + fmt_double(q),
                 c.c0 * c.c4 - (1.0 - rq), 1e-13);
    }
    {
        const lpptt::TwoTimeParams p = lpptt::derived_params(0.5, 3.0, 0.2, -0.1, 0.3, 0.4);
        v.expect("alpha'^3 - alpha^3 = 1",
                 p.alpha_prime * p.alpha_prime * p.alpha_prime -
                     p.alpha * p.alpha * p.alpha - 1.0,
                 1e-12);
        v.expect("alpha' xi2 = alpha xi1 + dxi",
                 p.alpha_prime * p.xi2 - p.alpha * p.xi1 - p.delta_xi, 1e-12);
        v.expect("alpha'^2 eta2 = alpha^2 eta1 + deta",
                 p.alpha_prime * p.alpha_prime * p.eta2 -
                     p.alpha * p.alpha * p.eta1 - p.delta_eta,
                 1e-12);
    }
    {
        const lpptt::AiryContourCheck a = lpptt::verify_airy_contour(0.3, 0.2, 1.0, 1.0);
        v.expect("airy descent contour identity", a.descent_residual, 1e-8);
        v.expect("airy ascent contour identity", a.ascent_residual, 1e-8);
        const lpptt::AiryContourCheck b =
            lpptt::verify_airy_contour(-0.4, -0.3, 1.2, 0.8);
        v.expect("airy descent contour identity (skew)", b.descent_residual, 1e-8);
        v.expect("airy ascent contour identity (skew)", b.ascent_residual, 1e-8);
    }
    {
        lpptt::TwoTimeParams params = lpptt::params_from_scaled(0.0, 0.0, 0.0, 0.0, 1.0);
        params.delta = lpptt::choose_delta(params);
        const lpptt::KernelContext ctx = lpptt::KernelContext::make(params);
        const std::vector<double> xs{-1.3, -0.4, 0.6, 1.7};
        const lpptt::STMatrices m = lpptt::s_t_assemble(ctx, xs, xs);
        double dev = 0.0;
        for (Eigen::Index i = 0; i < m.S.rows(); ++i)
            for (Eigen::Index j = 0; j < m.S.cols(); ++j)
                dev = std::max(dev, std::abs(m.S(i, j) + m.T(i, j) -
                                             (m.S1(i, j) - m.T1(i, j))));
        v.expect("S + T = S1 - T1 pointwise", dev, 1e-10);
        const lpptt::ContourSpec contour{};
        const lpptt::TwoTimeResult k =
            lpptt::eval_k_form(params, contour, 10.0, 40, threads);
        const lpptt::TwoTimeResult q =
            lpptt::eval_q_form(params, contour, 10.0, 40, threads);
        v.expect("K form vs Q form at the origin", k.value - q.value, 1e-6,
                 "K=" + fmt_double(k.value) + " Q=" + fmt_double(q.value));
    }
}

void verify_marginals(Verifier& v, int threads) {
    const lpptt::ContourSpec contour{};
    for (const auto& [xi1, eta1] : std::vector<std::pair<double, double>>{
             {0.0, 0.0}, {-1.0, 0.5}}) {
        const lpptt::MarginalCheck mc =
            lpptt::marginal_check(xi1, eta1, 8.0, 1.0, contour, 10.0, 60, threads);
        v.expect("two-time vs F2 marginal at (" + fmt_double(xi1) + "," +
                     fmt_double(eta1) + ")",
                 mc.gap, 1e-3,
                 "two-time=" + fmt_double(mc.two_time_value) +
                     " F2=" + fmt_double(mc.f2_value));
    }
}

void verify_duality(Verifier& v, int threads) {
    const lpptt::ContourSpec contour{};
    for (double alpha : {0.75, 1.0, 1.5}) {
        lpptt::TwoTimeParams params =
            lpptt::params_from_scaled(-0.3, 0.2, 0.4, -0.1, alpha);
        params.delta = lpptt::choose_delta(params);
        const lpptt::TwoTimeResult direct =
            lpptt::eval_k_form(params, contour, 10.0, 60, threads);
        const lpptt::TwoTimeResult dual =
            lpptt::eval_dual_form(params, contour, 10.0, 60, threads);
        v.expect("duality gap at alpha=" + fmt_double(alpha),
                 direct.value - dual.value, 1e-6,
                 "direct=" + fmt_double(direct.value) +
                     " dual=" + fmt_double(dual.value));
    }
}

void verify_finite(Verifier& v) {
    lpptt::FiniteCase cs;
    cs.q = lpptt::Rational(1, 2);
    cs.m = 1;
    cs.n = 1;
    cs.M = 2;
    cs.N = 2;
    cs.a = 1;
    cs.A = 2;
    const lpptt::FiniteResult r = lpptt::finite_two_point(cs);
    const lpptt::Rational oracle = enumerate_two_point(cs);
    v.expect_true("finite_two_point equals enumeration (= " + oracle.get_str() + ")",
                  r.probability == oracle, "got " + r.probability.get_str());
    v.expect_true("acceptance value is 11/64",
                  r.probability == lpptt::Rational(11, 64),
                  "got " + r.probability.get_str());
    const lpptt::FiniteResult conj = lpptt::finite_two_point(cs, 0.3);
    v.expect_true("conjugation leaves the result unchanged",
                  conj.probability == r.probability &&
                      conj.u_one_determinant == r.u_one_determinant);
    lpptt::FiniteCase marg = cs;
    marg.a = 1000;  // first constraint inactive
    const lpptt::FiniteResult m = lpptt::finite_two_point(marg);
    v.expect_true("det L(1) equals the unconstrained marginal",
                  m.probability == r.u_one_determinant,
                  "detL(1)=" + r.u_one_determinant.get_str());
    lpptt::FiniteCase bigger = cs;
    bigger.A = 3;
    const lpptt::FiniteResult b = lpptt::finite_two_point(bigger);
    v.expect_true("probability is monotone in A",
                  b.probability >= r.probability);
}

void verify_mc(Verifier& v, std::int64_t samples, std::uint64_t seed,
               int threads) {
    lpptt::FiniteCase cs;
    cs.q = lpptt::Rational(1, 2);
    cs.m = 1;
    cs.n = 1;
    cs.M = 2;
    cs.N = 2;
    cs.a = 1;
    cs.A = 2;
    const lpptt::FiniteResult exact = lpptt::finite_two_point(cs);
    const lpptt::DiscreteTarget target{1, 1, 2, 2, 1, 2};
    const lpptt::McEstimate est =
        lpptt::mc_point_probability(0.5, target, samples, seed, threads);
    const double gap = est.estimate - exact.probability_double();
    v.expect("MC matches the exact probability (4 sigma)",
             gap / (4.0 * est.std_error), 1.0,
             "mc=" + fmt_double(est.estimate) +
                 " exact=" + fmt_double(exact.probability_double()) +
                 " se=" + fmt_double(est.std_error));
    // Geometric moments from one sampled field.
    const lpptt::PassageField field = lpptt::sample_field(0.5, 1000, 1000, seed);
    double mean = 0.0;
    for (std::int32_t w : field.w) mean += w;
    mean /= static_cast<double>(field.w.size());
    const double se = std::sqrt(2.0 / static_cast<double>(field.w.size()));
    v.expect("geometric sample mean (4 sigma)", (mean - 1.0) / (4.0 * se), 1.0,
             "mean=" + fmt_double(mean));
    // Growth recursion holds cell by cell.
    const lpptt::PassageTable table = lpptt::last_passage(field);
    bool recursion_ok = true;
    for (std::int64_t i = 1; i <= 50 && recursion_ok; ++i)
        for (std::int64_t j = 1; j <= 50 && recursion_ok; ++j)
            recursion_ok = table.at(i, j) ==
                           std::max(table.at(i - 1, j), table.at(i, j - 1)) +
                               field.weight(i, j);
    v.expect_true("growth recursion holds cell-wise", recursion_ok);
}

int run_verify(const VerifyOpts& o) {
    Verifier v;
    if (o.suite == "identities")
        verify_identities(v, o.threads);
    else if (o.suite == "marginals")
        verify_marginals(v, o.threads);
    else if (o.suite == "duality")
        verify_duality(v, o.threads);
    else if (o.suite == "finite")
        verify_finite(v);
    else if (o.suite == "mc")
        verify_mc(v, o.samples, o.seed, o.threads);
    else
        throw lpptt::parameter_error("verify: unknown suite " + o.suite);

    json config{{"command", "verify"},
                {"suite", o.suite},
                {"samples", o.samples},
                {"seed", o.seed}};
    json checks = json::array();
    for (const Check& c : v.checks())
        checks.push_back(json{{"name", c.name},
                              {"pass", c.passed},
                              {"value", c.value},
                              {"tolerance", c.tolerance},
                              {"detail", c.detail}});
    const int failed = v.failed();
    json artifact{{"command", "verify"},
                  {"config", config},
                  {"checks", checks},
                  {"passed", static_cast<int>(v.checks().size()) - failed},
                  {"failed", failed}};
    emit(o.out, artifact.dump(2),
         "verify " + o.suite + ": " +
             std::to_string(v.checks().size() - static_cast<std::size_t>(failed)) +
             " passed, " + std::to_string(failed) + " failed");
    return failed == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-time distribution of geometric last-passage percolation"};
    app.require_subcommand(1);

    SimulateOpts sim;
    CLI::App* c_sim = app.add_subcommand(
        "simulate", "Sample one weight field and report the last-passage time");
    c_sim->add_option("--q", sim.q, "geometric parameter in (0,1)")
        ->capture_default_str();
    c_sim->add_option("--rows", sim.rows, "field rows")->capture_default_str();
    c_sim->add_option("--cols", sim.cols, "field columns")->capture_default_str();
    c_sim->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
    c_sim->add_option("--stream", sim.stream, "RNG stream")->capture_default_str();
    c_sim->add_option("--table-out", sim.table_out,
                      "also write the full (i,j,w,G) table to this CSV");
    c_sim->add_option("--out", sim.out, "artifact file (JSON)");

    McOpts mc;
    CLI::App* c_mc = app.add_subcommand(
        "mc-two-time", "Monte-Carlo joint CDF of the rescaled two-time pair");
    c_mc->add_option("--q", mc.q, "geometric parameter")->capture_default_str();
    c_mc->add_option("--T", mc.T, "system size")->capture_default_str();
    c_mc->add_option("--t1", mc.t1, "first time fraction")->capture_default_str();
    c_mc->add_option("--t2", mc.t2, "second time fraction")->capture_default_str();
    c_mc->add_option("--eta1", mc.eta1, "first spatial coordinate")
        ->capture_default_str();
    c_mc->add_option("--eta2", mc.eta2, "second spatial coordinate")
        ->capture_default_str();
    c_mc->add_option("--xi1", mc.xi1, "first threshold grid")
        ->capture_default_str()
        ->expected(-1);
    c_mc->add_option("--xi2", mc.xi2, "second threshold grid")
        ->capture_default_str()
        ->expected(-1);
    c_mc->add_option("--samples", mc.samples, "replicas")->capture_default_str();
    c_mc->add_option("--seed", mc.seed, "RNG seed")->capture_default_str();
    c_mc->add_option("--threads", mc.threads,
                     "worker threads (0 = hardware parallelism)")
        ->capture_default_str();
    c_mc->add_option("--out", mc.out, "artifact file (CSV)");

    F2Opts f2;
    CLI::App* c_f2 =
        app.add_subcommand("f2", "Tracy-Widom GUE distribution function");
    c_f2->add_option("--xi", f2.xi, "evaluation points")
        ->capture_default_str()
        ->expected(-1);
    c_f2->add_option("--L", f2.L, "quadrature interval length")
        ->capture_default_str();
    c_f2->add_option("--nodes", f2.nodes, "quadrature nodes")
        ->capture_default_str();
    c_f2->add_option("--out", f2.out, "artifact file");

    TwoTimeOpts tt;
    CLI::App* c_tt = app.add_subcommand(
        "twotime", "Limiting two-time distribution by Fredholm determinants");
    c_tt->add_option("--xi1", tt.xi1, "first fluctuation coordinate(s)")
        ->capture_default_str()
        ->expected(-1);
    c_tt->add_option("--eta1", tt.eta1, "first spatial coordinate")
        ->capture_default_str();
    c_tt->add_option("--xi2", tt.xi2, "second fluctuation coordinate(s)")
        ->capture_default_str()
        ->expected(-1);
    c_tt->add_option("--eta2", tt.eta2, "second spatial coordinate")
        ->capture_default_str();
    c_tt->add_option("--alpha", tt.alpha, "time-ratio parameter (t1/dt)^(1/3)")
        ->capture_default_str();
    c_tt->add_option("--t1", tt.t1, "first time (overrides --alpha with --t2)");
    c_tt->add_option("--t2", tt.t2, "second time (overrides --alpha with --t1)");
    c_tt->add_option("--L", tt.L, "grid half-length")->capture_default_str();
    c_tt->add_option("--nodes", tt.nodes,
                     "grid nodes per side (K/dual) or on the half line (Q)")
        ->capture_default_str();
    c_tt->add_option("--radius", tt.radius, "u-contour radius (> 1)")
        ->capture_default_str();
    c_tt->add_option("--u-nodes", tt.u_nodes, "u-contour trapezoid points")
        ->capture_default_str();
    c_tt->add_option("--delta-margin", tt.delta_margin,
                     "margin of the conjugation rate over its lower bound")
        ->capture_default_str();
    c_tt->add_option("--form", tt.form, "evaluation route: k, q, or dual")
        ->capture_default_str()
        ->check(CLI::IsMember({"k", "q", "dual"}));
    c_tt->add_option("--threads", tt.threads,
                     "worker threads (0 = hardware parallelism)")
        ->capture_default_str();
    c_tt->add_option("--out", tt.out, "artifact file");

    FiniteOpts fin;
    CLI::App* c_fin = app.add_subcommand(
        "finite", "Exact finite-size probability P[G(m,n)<a, G(M,N)<A]");
    c_fin->add_option("--m", fin.m, "first corner row")->capture_default_str();
    c_fin->add_option("--n", fin.n, "first corner column")->capture_default_str();
    c_fin->add_option("--M", fin.M, "second corner row")->capture_default_str();
    c_fin->add_option("--N", fin.N, "second corner column")->capture_default_str();
    c_fin->add_option("--a", fin.a, "first threshold")->capture_default_str();
    c_fin->add_option("--A", fin.A, "second threshold")->capture_default_str();
    c_fin->add_option("--q", fin.q, "geometric parameter (rational like 1/2)")
        ->capture_default_str();
    c_fin->add_option("--out", fin.out, "artifact file (JSON)");

    VerifyOpts ver;
    CLI::App* c_ver =
        app.add_subcommand("verify", "Run a named verification suite");
    c_ver->add_option("--suite", ver.suite, "one of identities, marginals, duality, finite, mc")
        ->required()
        ->check(CLI::IsMember({"identities", "marginals", "duality", "finite", "mc"}));
    c_ver->add_option("--samples", ver.samples, "Monte-Carlo replicas (mc suite)")
        ->capture_default_str();
    c_ver->add_option("--seed", ver.seed, "RNG seed (mc suite)")
        ->capture_default_str();
    c_ver->add_option("--threads", ver.threads,
                      "worker threads (0 = hardware parallelism)")
        ->capture_default_str();
    c_ver->add_option("--out", ver.out, "report file (JSON)");

    try {
        app.parse(argc, argv);
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_mc->parsed()) return run_mc_two_time(mc);
        if (c_f2->parsed()) return run_f2(f2);
        if (c_tt->parsed()) return run_twotime(tt);
        if (c_fin->parsed()) return run_finite(fin);
        if (c_ver->parsed()) return run_verify(ver);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0; bad flags are
                                   // parameter errors
    } catch (const lpptt::parameter_error& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 2;
    } catch (const lpptt::accuracy_error& e) {
        std::cerr << "accuracy error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

#include "lpptt/finiten.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "lpptt/errors.hpp"
#include "lpptt/parallel.hpp"
#include "lpptt/rng.hpp"
#include "lpptt/scaling.hpp"

namespace lpptt {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Removes trailing zero coefficients so degree queries are meaningful.
void poly_trim(RationalPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RationalPoly poly_mul(const RationalPoly& a, const RationalPoly& b) {
    if (a.empty() || b.empty()) return {};
    RationalPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    }
    poly_trim(out);
    return out;
}

void poly_add_inplace(RationalPoly& a, const RationalPoly& b, int sign) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (sign > 0)
            a[i] += b[i];
        else
            a[i] -= b[i];
    }
}

}  // namespace

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parameter_error("empty rational literal");

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s.erase(s.begin());
    }

    Rational value;
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw parameter_error("malformed rational literal: " + text);
        mpz_class d(den);
        if (d == 0) throw parameter_error("zero denominator: " + text);
        value = Rational(mpz_class(num), d);
    } else if (dot != std::string::npos) {
        const std::string ip = s.substr(0, dot);
        const std::string fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
            (!fp.empty() && !all_digits(fp)))
            throw parameter_error("malformed decimal literal: " + text);
        mpz_class num = ip.empty() ? mpz_class(0) : mpz_class(ip);
        mpz_class den(1);
        for (char c : fp) {
            num = num * 10 + (c - '0');
            den *= 10;
        }
        value = Rational(num, den);
    } else {
        if (!all_digits(s))
            throw parameter_error("malformed rational literal: " + text);
        value = Rational(mpz_class(s));
    }
    value.canonicalize();
    if (negative) value = -value;
    return value;
}

Rational binomial_rational(long n, long k) {
    if (k < 0) return 0;
    Rational out(1);
    for (long t = 0; t < k; ++t) {
        out *= Rational(n - t);
        out /= Rational(t + 1);
    }
    return out;
}

Rational rational_pow(const Rational& q, long e) {
    if (e == 0) return 1;
    Rational base = q;
    long exp = e;
    if (exp < 0) {
        if (base == 0) throw parameter_error("zero raised to a negative power");
        base = 1 / base;
        exp = -exp;
    }
    Rational out(1);
    while (exp > 0) {
        if (exp & 1) out *= base;
        base *= base;
        exp >>= 1;
    }
    return out;
}

Rational negbinom_weight(long m, const Rational& q, long x) {
    if (m < 1) throw parameter_error("negative binomial weight needs m >= 1");
    if (q <= 0 || q >= 1)
        throw parameter_error("negative binomial weight needs 0 < q < 1");
    if (x < 0) return 0;
    return rational_pow(1 - q, m) * binomial_rational(x + m - 1, x) *
           rational_pow(q, x);
}

Rational finite_difference_weight(long j, long m, const Rational& q, long x) {
    if (j >= 0) {
        // Forward difference: sum_{t} (-1)^{j-t} C(j,t) w_m(x+t).
        Rational out(0);
        for (long t = 0; t <= j; ++t) {
            Rational term = binomial_rational(j, t) * negbinom_weight(m, q, x + t);
            if ((j - t) % 2 != 0) term = -term;
            out += term;
        }
        return out;
    }
    // Iterated tail sums: Delta^{-p} w(x) = sum_{y<=x-p} C(x-1-y, p-1) w(y);
    // the weight vanishes below 0, so the sum is finite.
    const long p = -j;
    Rational out(0);
    for (long y = 0; y <= x - p; ++y)
        out += binomial_rational(x - 1 - y, p - 1) * negbinom_weight(m, q, y);
    return out;
}

Rational beta_coeff(long k, int eps, long m, long a, const Rational& q) {
    if (m < 1) throw parameter_error("beta coefficient needs m >= 1");
    if (eps != 0 && eps != 1) throw parameter_error("beta needs eps in {0,1}");
    if (k >= 1) return 0;
    // Coefficient of zeta^{-k} in (1 - zeta/(1-q))^m (1 - zeta)^{-s},
    // s = a + m - eps:  sum over the split between the two factors.
    const long p = -k;
    const long s = a + m - eps;
    const Rational inv = 1 / (1 - q);
    Rational out(0);
    for (long i = 0; i <= std::min(m, p); ++i) {
        Rational term = binomial_rational(m, i) * rational_pow(inv, i) *
                        binomial_rational(s + (p - i) - 1, p - i);
        if (i % 2 != 0) term = -term;
        out += term;
    }
    return out;
}

void FiniteCase::validate() const {
    if (q <= 0 || q >= 1) throw parameter_error("finite case needs 0 < q < 1");
    if (m < 1 || n < 1) throw parameter_error("finite case needs m, n >= 1");
    if (M <= m || N <= n)
        throw parameter_error("finite case needs m < M and n < N");
    if (a < 0 || A < 0) throw parameter_error("finite case needs a, A >= 0");
}

Rational FiniteFunctions::f01(long i, long x) const {
    // beta^1_{k-i} vanishes for k > i, so the sum is triangular.
    Rational out(0);
    for (long k = 1; k <= std::min(i, cs.N); ++k) {
        Rational term = beta_coeff(k - i, 1, cs.m, cs.a, cs.q) *
                        finite_difference_weight(cs.n - k, cs.m, cs.q, x + cs.a);
        if ((cs.n - k) % 2 != 0) term = -term;
        out += term;
    }
    return conj[static_cast<std::size_t>(i - 1)] * out;
}

Rational FiniteFunctions::f12(long x, long j) const {
    // beta^0_{j-k} vanishes for k < j.
    Rational out(0);
    for (long k = std::max(j, 1L); k <= cs.N; ++k) {
        Rational term =
            finite_difference_weight(k - 1 - cs.n, cs.dm(), cs.q, cs.da() - x) *
            beta_coeff(j - k, 0, cs.dm(), cs.da(), cs.q);
        if ((k - cs.n) % 2 != 0) term = -term;
        out += term;
    }
    return out / conj[static_cast<std::size_t>(j - 1)];
}

FiniteFunctions f_functions(const FiniteCase& cs, double conj_delta) {
    cs.validate();
    FiniteFunctions out;
    out.cs = cs;
    out.conj.assign(static_cast<std::size_t>(cs.N), Rational(1));
    if (conj_delta != 0.0) {
        const double rho_d =
            (1.0 - std::sqrt(cs.q.get_d())) * std::exp(-conj_delta);
        if (!(rho_d > 0.0))
            throw parameter_error("conjugation ratio must be positive");
        const Rational rho(rho_d);  // exact binary expansion of the double
        for (long i = 1; i <= cs.N; ++i)
            out.conj[static_cast<std::size_t>(i - 1)] = rational_pow(rho, i);
    }
    return out;
}

LMatrices l_matrix(const FiniteCase& cs, double conj_delta) {
    const FiniteFunctions fn = f_functions(cs, conj_delta);
    const long N = cs.N;
    LMatrices out;
    out.n = cs.n;
    out.L1.assign(static_cast<std::size_t>(N),
                  std::vector<Rational>(static_cast<std::size_t>(N), Rational(0)));
    out.L2 = out.L1;

    // Analytic support: f01 vanishes below -a-N, f12 vanishes above da+N.
    // The scan covers a window twice as wide and treats any nonzero value in
    // the margin as evidence of a reasoning bug.
    const long lo_hard = -cs.a - 2 * N, lo_analytic = -cs.a - N;
    const long hi_hard = cs.da() + 2 * N, hi_analytic = cs.da() + N;

    std::vector<Rational> row01(static_cast<std::size_t>(N));
    std::vector<Rational> row12(static_cast<std::size_t>(N));
    for (long x = lo_hard; x <= hi_hard; ++x) {
        for (long i = 1; i <= N; ++i)
            row01[static_cast<std::size_t>(i - 1)] = fn.f01(i, x);
        for (long j = 1; j <= N; ++j)
            row12[static_cast<std::size_t>(j - 1)] = fn.f12(x, j);

        if (x < lo_analytic)
            for (const Rational& v : row01)
                if (v != 0)
                    throw accuracy_error(
                        "finite-n support scan: f01 nonzero below the analytic bound");
        if (x > hi_analytic)
            for (const Rational& v : row12)
                if (v != 0)
                    throw accuracy_error(
                        "finite-n support scan: f12 nonzero above the analytic bound");

        RationalMatrix& target = (x < 0) ? out.L1 : out.L2;
        for (long i = 0; i < N; ++i) {
            const Rational& fi = row01[static_cast<std::size_t>(i)];
            if (fi == 0) continue;
            for (long j = 0; j < N; ++j)
                target[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    fi * row12[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

RationalPoly det_poly(const std::vector<std::vector<RationalPoly>>& a) {
    const std::size_t N = a.size();
    if (N == 0) return {Rational(1)};
    for (const auto& row : a)
        if (row.size() != N) throw parameter_error("det_poly needs a square matrix");
    if (N > 20) throw parameter_error("det_poly is limited to verification sizes");

    // dp[S] = determinant of the submatrix on the last |S| rows and the
    // column set S, filled in order of increasing popcount.
    const std::size_t full = (std::size_t{1} << N) - 1;
    std::vector<RationalPoly> dp(full + 1);
    dp[0] = {Rational(1)};
    for (std::size_t S = 1; S <= full; ++S) {
        const int r = __builtin_popcountll(S);
        const std::size_t row = N - static_cast<std::size_t>(r);
        RationalPoly acc;
        int parity = 0;
        for (std::size_t c = 0; c < N; ++c) {
            if (!(S & (std::size_t{1} << c))) continue;
            const RationalPoly& entry = a[row][c];
            if (!entry.empty()) {
                RationalPoly term = poly_mul(entry, dp[S & ~(std::size_t{1} << c)]);
                poly_add_inplace(acc, term, (parity % 2 == 0) ? +1 : -1);
            }
            ++parity;
        }
        poly_trim(acc);
        dp[S] = std::move(acc);
    }
    return dp[full];
}

Rational det_rational(RationalMatrix a) {
    const std::size_t N = a.size();
    for (const auto& row : a)
        if (row.size() != N)
            throw parameter_error("det_rational needs a square matrix");
    Rational det(1);
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        while (pivot < N && a[pivot][col] == 0) ++pivot;
        if (pivot == N) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            det = -det;
        }
        det *= a[col][col];
        const Rational inv = 1 / a[col][col];
        for (std::size_t r = col + 1; r < N; ++r) {
            if (a[r][col] == 0) continue;
            const Rational factor = a[r][col] * inv;
            for (std::size_t c = col; c < N; ++c)
                a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

FiniteResult finite_two_point(const FiniteCase& cs, double conj_delta) {
    const LMatrices lm = l_matrix(cs, conj_delta);
    const std::size_t N = static_cast<std::size_t>(cs.N);

    // Rows with i <= n carry u^{-1} on L2 and rows with i > n carry u on L1,
    // so det L(u) = u^{-n} det(u L1 + L2): one genuine polynomial determinant.
    std::vector<std::vector<RationalPoly>> entries(
        N, std::vector<RationalPoly>(N));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            RationalPoly e = {lm.L2[i][j], lm.L1[i][j]};
            poly_trim(e);
            entries[i][j] = std::move(e);
        }

    FiniteResult out;
    out.poly = det_poly(entries);
    out.min_degree = -cs.n;
    if (out.poly.size() > N + 1)
        throw accuracy_error("finite-n determinant degree exceeds matrix size");

    out.probability = 0;
    out.u_one_determinant = 0;
    for (std::size_t d = 0; d < out.poly.size(); ++d) {
        out.u_one_determinant += out.poly[d];
        if (static_cast<long>(d) >= cs.n) out.probability += out.poly[d];
    }
    if (out.probability < 0 || out.probability > 1 ||
        out.u_one_determinant < 0 || out.u_one_determinant > 1)
        throw accuracy_error("finite-n determinant left [0,1]: reasoning bug");
    return out;
}

Rational transition_probability(long steps, const Rational& q,
                                const std::vector<long>& x,
                                const std::vector<long>& y) {
    if (steps < 1) throw parameter_error("transition needs steps >= 1");
    if (x.empty() || x.size() != y.size())
        throw parameter_error("transition needs equal nonempty state vectors");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] < x[i - 1] || y[i] < y[i - 1])
            throw parameter_error("transition states must be weakly increasing");
    const long N = static_cast<long>(x.size());
    RationalMatrix a(static_cast<std::size_t>(N),
                     std::vector<Rational>(static_cast<std::size_t>(N)));
    for (long i = 1; i <= N; ++i)
        for (long j = 1; j <= N; ++j)
            a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                finite_difference_weight(
                    j - i, steps, q,
                    y[static_cast<std::size_t>(j - 1)] -
                        x[static_cast<std::size_t>(i - 1)]);
    return det_rational(std::move(a));
}

TransitionCheck transition_check(long steps, double q,
                                 const std::vector<long>& x, long y_span,
                                 long samples, unsigned long long seed,
                                 int threads) {
    if (samples < 1) throw parameter_error("transition check needs samples >= 1");
    if (y_span < 0) throw parameter_error("transition check needs y_span >= 0");
    const std::size_t N = x.size();
    if (N == 0 || N > 4)
        throw parameter_error("transition check supports 1 <= N <= 4");

    // Histogram over offset vectors (y_j - x_j) in [0, y_span]^N.
    std::size_t cells = 1;
    for (std::size_t i = 0; i < N; ++i) cells *= static_cast<std::size_t>(y_span + 1);
    std::vector<std::atomic<long long>> counts(cells);
    for (auto& c : counts) c.store(0, std::memory_order_relaxed);

    const GeometricSampler sampler(q);
    parallel_for(0L, samples, threads, [&](long replica) {
        CounterRng rng(seed);
        const std::uint64_t stream = static_cast<std::uint64_t>(replica);
        std::vector<long> state(x);
        std::uint64_t word = 0;
        for (long s = 0; s < steps; ++s) {
            long running = 0;
            for (std::size_t j = 0; j < N; ++j) {
                const double u = CounterRng::uniform01(rng.word(word++, stream));
                const long w = sampler.sample(u);
                const long base = (j == 0) ? state[0] : std::max(running, state[j]);
                running = base + w;
                state[j] = running;
            }
        }
        std::size_t index = 0;
        bool inside = true;
        for (std::size_t j = 0; j < N && inside; ++j) {
            const long off = state[j] - x[j];
            if (off < 0 || off > y_span) inside = false;
            index = index * static_cast<std::size_t>(y_span + 1) +
                    static_cast<std::size_t>(off);
        }
        if (inside) counts[index].fetch_add(1, std::memory_order_relaxed);
    });

    const Rational qr(q);
    TransitionCheck out;
    std::vector<long> y(N);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t rem = cell;
        for (std::size_t j = N; j-- > 0;) {
            y[j] = x[j] + static_cast<long>(rem % static_cast<std::size_t>(y_span + 1));
            rem /= static_cast<std::size_t>(y_span + 1);
        }
        bool sorted = true;
        for (std::size_t j = 1; j < N; ++j)
            if (y[j] < y[j - 1]) sorted = false;
        if (!sorted) continue;  // unreachable states; determinant applies on W_N

        const double p = transition_probability(steps, qr, x, y).get_d();
        const double freq =
            static_cast<double>(counts[cell].load(std::memory_order_relaxed)) /
            static_cast<double>(samples);
        const double dev = std::abs(p - freq);
        const double sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) /
                                       static_cast<double>(samples)) +
                             1.0 / static_cast<double>(samples);
        out.max_abs_dev = std::max(out.max_abs_dev, dev);
        out.max_sigmas = std::max(out.max_sigmas, dev / sigma);
        out.total_det_mass += p;
        ++out.cells;
    }
    return out;
}

HStarCheck hstar_limit_check(double q, double K, double xi, double eta,
                             double v, std::complex<double> w_prime) {
    const ScalingConstants c = compute_constants(q);
    const double k = K - c.c1 * eta * std::pow(K, 2.0 / 3.0) +
                     c.c0 * v * std::cbrt(K);
    const double l = K + c.c1 * eta * std::pow(K, 2.0 / 3.0);
    const double b = c.c2 * K + c.c3 * xi * std::cbrt(K);
    if (!(k >= 1.0 && l >= 1.0 && b >= 1.0))
        throw parameter_error("hstar check needs K large enough that k,l,b >= 1");

    const double wc = 1.0 - std::sqrt(q);
    const std::complex<double> w = wc + c.c4 / std::cbrt(K) * w_prime;
    const double tiny = 1e-12;
    if (std::abs(w) < tiny || std::abs(1.0 - w) < tiny ||
        std::abs(1.0 - w / (1.0 - q)) < tiny)
        throw parameter_error("hstar evaluation hit a pole or branch point");

    // log H(w) - log H(wc), assembled difference-by-difference so the huge
    // individual exponents (order K) never meet floating point.
    auto log_h = [&](std::complex<double> z) {
        return k * std::log(z) + (b + l) * std::log(1.0 - z) -
               l * std::log(1.0 - z / (1.0 - q));
    };
    HStarCheck out;
    out.h_star = std::exp(log_h(w) - log_h(std::complex<double>(wc, 0.0)));
    out.predicted = std::exp(w_prime * w_prime * w_prime / 3.0 +
                             eta * w_prime * w_prime - (xi - v) * w_prime);
    out.residual = std::abs(out.h_star - out.predicted);
    return out;
}

}  // namespace lpptt

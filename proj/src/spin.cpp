#include "gkp/spin.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "gkp/errors.hpp"

namespace gkp {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Re(i^n) for n >= 0.
int re_i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return 1;
        case 2: return -1;
        default: return 0;
    }
}

int parity_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

// Row C(n, 0..n) as exact integers.
std::vector<BigInt> binomial_row(int n) {
    std::vector<BigInt> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1;
    for (int i = 0; i < n; ++i) {
        row[i + 1] = row[i] * (n - i) / (i + 1);
    }
    return row;
}

long double log_factorial_l(int n) { return std::lgamma(static_cast<long double>(n) + 1.0L); }

double explicit_sum(TotalSpin j, HalfInt m, HalfInt mp) {
    // Splitting the four denominator factorials into two binomials turns the
    // alternating sum into an integer sum, which is then exact:
    //   d = 2^-J sqrt[(J+m')!(J-m')! / ((J+m)!(J-m)!)]
    //       * sum_k (-1)^(k-m'+m) C(J+m, k-m'+m) C(J-m, k)
    const int a = (j.two_j() + m.twice()) / 2;    // J + m
    const int b = (j.two_j() - m.twice()) / 2;    // J - m
    const int ap = (j.two_j() + mp.twice()) / 2;  // J + m'
    const int bp = (j.two_j() - mp.twice()) / 2;  // J - m'
    const int delta = (mp.twice() - m.twice()) / 2;

    const auto row_a = binomial_row(a);
    const auto row_b = binomial_row(b);
    BigInt sum = 0;
    const int k_lo = std::max(0, delta);
    const int k_hi = std::min(ap, b);
    for (int k = k_lo; k <= k_hi; ++k) {
        BigInt term = row_a[k - delta] * row_b[k];
        if ((k - delta) % 2 != 0) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    if (sum == 0) {
        return 0.0;
    }
    const int sign = sum < 0 ? -1 : 1;
    const BigInt mag = boost::multiprecision::abs(sum);
    const long double log_sum = std::log(mag.convert_to<long double>());
    const long double log_pref = 0.5L * (log_factorial_l(ap) + log_factorial_l(bp) -
                                         log_factorial_l(a) - log_factorial_l(b)) -
                                 static_cast<long double>(j.value()) * std::numbers::ln2_v<long double>;
    return sign * static_cast<double>(std::exp(log_sum + log_pref));
}

double jacobi_form(TotalSpin j, HalfInt m, HalfInt mp) {
    const int mu = std::abs(m.twice() - mp.twice()) / 2;
    const int nu = std::abs(m.twice() + mp.twice()) / 2;
    // s = J - (mu + nu)/2 = J - max(|m|, |m'|)
    const int s = (j.two_j() - std::max(std::abs(m.twice()), std::abs(mp.twice()))) / 2;
    const int varsigma = (mp >= m) ? 1 : parity_sign((mp.twice() - m.twice()) / 2);
    const double two_j = j.two_j();
    const double log_mag = 0.5 * log_binomial(two_j, s + mu) - 0.5 * log_binomial(two_j, s) +
                           (s - j.value()) * std::numbers::ln2;
    return varsigma * std::exp(log_mag) * jacobi_at_zero(s, mu, nu);
}

void require_edge_or_center(TotalSpin j, HalfInt x) {
    if (x.twice() != j.two_j() && x.twice() != -j.two_j() && x.twice() != 0) {
        throw InvalidIndex("outcome " + x.str() + " is not one of +J, -J, 0 for J = " +
                           j.as_half_int().str());
    }
    if (x.twice() == 0 && !j.is_integer()) {
        throw HalfIntegerUnsupported("outcome 0 requires integer J");
    }
}

}  // namespace

HalfInt HalfInt::parse(const std::string& text) {
    std::string s = text;
    if (!s.empty() && s.front() == '+') {
        s.erase(0, 1);
    }
    if (s.empty()) {
        throw InvalidIndex("empty half-integer");
    }
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        int num = 0;
        int den = 0;
        const char* begin = s.data();
        auto [p1, e1] = std::from_chars(begin, begin + slash, num);
        auto [p2, e2] = std::from_chars(begin + slash + 1, begin + s.size(), den);
        if (e1 != std::errc{} || e2 != std::errc{} || p1 != begin + slash ||
            p2 != begin + s.size() || (den != 1 && den != 2)) {
            throw InvalidIndex("not a half-integer: '" + text + "'");
        }
        return HalfInt::from_twice(den == 2 ? num : 2 * num);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InvalidIndex("not a half-integer: '" + text + "'");
    }
    return from_double(value);
}

HalfInt HalfInt::from_double(double value) {
    const double twice = 2.0 * value;
    if (!std::isfinite(twice) || std::abs(twice) > 1e9 || twice != std::round(twice)) {
        throw InvalidIndex("value is not an exact half-integer");
    }
    return HalfInt::from_twice(static_cast<int>(std::lround(twice)));
}

std::string HalfInt::str() const {
    if (is_integer()) {
        return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
}

TotalSpin::TotalSpin(int two_j) : two_j_(two_j) {
    if (two_j < 0) {
        throw DomainError("total spin must be non-negative");
    }
}

TotalSpin TotalSpin::from_double(double j) {
    const HalfInt h = HalfInt::from_double(j);
    return TotalSpin(h.twice());
}

std::vector<HalfInt> TotalSpin::indices() const {
    std::vector<HalfInt> out;
    out.reserve(static_cast<std::size_t>(dimension()));
    for (int k = 0; k < dimension(); ++k) {
        out.push_back(index(k));
    }
    return out;
}

void require_index(TotalSpin j, HalfInt m, const char* what) {
    if (!j.admits(m)) {
        throw InvalidIndex(std::string(what) + " = " + m.str() + " is not a valid index for J = " +
                           j.as_half_int().str());
    }
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double jacobi_at_zero(int n, int a, int b) {
    if (n < 0) {
        throw DomainError("Jacobi degree must be non-negative");
    }
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double curr = 0.5 * (a - b);
    const double a2b2 = static_cast<double>(a) * a - static_cast<double>(b) * b;
    for (int k = 2; k <= n; ++k) {
        const double c = 2.0 * k + a + b;
        const double next = ((c - 1.0) * a2b2 * curr -
                             2.0 * (k + a - 1.0) * (k + b - 1.0) * c * prev) /
                            (2.0 * k * (k + a + b) * (c - 2.0));
        prev = curr;
        curr = next;
    }
    return curr;
}

double wigner_d(TotalSpin j, HalfInt m, HalfInt m_prime, DMethod method) {
    require_index(j, m, "m");
    require_index(j, m_prime, "m'");
    switch (method) {
        case DMethod::ExplicitSum: return explicit_sum(j, m, m_prime);
        case DMethod::Jacobi: return jacobi_form(j, m, m_prime);
    }
    return 0.0;
}

double d_edge(TotalSpin j, HalfInt m, int sign) {
    require_index(j, m);
    if (sign != 1 && sign != -1) {
        throw DomainError("d_edge sign must be +1 or -1");
    }
    const int j_plus_m = (j.two_j() + m.twice()) / 2;
    const int j_minus_m = (j.two_j() - m.twice()) / 2;
    const double mag = std::exp(0.5 * log_binomial(j.two_j(), j_minus_m) - j.value() * std::numbers::ln2);
    return (sign < 0 ? parity_sign(j_plus_m) : 1) * mag;
}

double d_center(TotalSpin j, HalfInt m) {
    if (!j.is_integer()) {
        throw HalfIntegerUnsupported("d_{m,0} requires integer J");
    }
    require_index(j, m);
    const int jj = j.two_j() / 2;
    const int j_plus_m = jj + m.twice() / 2;
    const int re = re_i_pow(j_plus_m);
    if (re == 0) {
        return 0.0;
    }
    const int j_minus_m = jj - m.twice() / 2;
    const double log_mag = -jj * std::numbers::ln2 + 0.5 * log_binomial(2 * jj, jj) -
                           0.5 * log_binomial(2 * jj, j_minus_m) +
                           log_binomial(jj, j_minus_m / 2);
    return re * std::exp(log_mag);
}

double envelope_product(TotalSpin j, HalfInt m, HalfInt x) {
    require_index(j, m);
    require_edge_or_center(j, x);
    const int j_plus_m = (j.two_j() + m.twice()) / 2;
    const int j_minus_m = (j.two_j() - m.twice()) / 2;
    if (x.twice() == 0 && j.two_j() != 0) {
        const int re = re_i_pow(j_plus_m);
        if (re == 0) {
            return 0.0;
        }
        const int jj = j.two_j() / 2;
        const double log_mag = -j.two_j() * std::numbers::ln2 + 0.5 * log_binomial(2 * jj, jj) +
                               log_binomial(jj, j_minus_m / 2);
        return re * std::exp(log_mag);
    }
    const int sign = (x.twice() < 0) ? parity_sign(j_plus_m) : 1;
    return sign * std::exp(log_binomial(j.two_j(), j_minus_m) - j.two_j() * std::numbers::ln2);
}

double gaussian_envelope_approx(TotalSpin j, HalfInt m, HalfInt x) {
    require_index(j, m);
    require_edge_or_center(j, x);
    if (j.two_j() == 0) {
        throw DomainError("Gaussian envelope approximation needs J > 0");
    }
    const double jv = j.value();
    const double mv = m.value();
    const int j_plus_m = (j.two_j() + m.twice()) / 2;
    if (x.twice() == 0) {
        return re_i_pow(j_plus_m) * std::numbers::sqrt2 * std::pow(std::numbers::pi * jv, -0.75) *
               std::exp(-mv * mv / (2.0 * jv));
    }
    const int sign = (x.twice() < 0) ? parity_sign(j_plus_m) : 1;
    return sign * std::exp(-mv * mv / jv) / std::sqrt(std::numbers::pi * jv);
}

std::vector<double> d_column(TotalSpin j, HalfInt x, DMethod method) {
    require_index(j, x, "x");
    std::vector<double> col(static_cast<std::size_t>(j.dimension()));
    for (int k = 0; k < j.dimension(); ++k) {
        const HalfInt m = j.index(k);
        if (x.twice() == j.two_j()) {
            col[k] = d_edge(j, m, +1);
        } else if (x.twice() == -j.two_j()) {
            col[k] = d_edge(j, m, -1);
        } else {
            col[k] = wigner_d(j, m, x, method);
        }
    }
    return col;
}

std::vector<double> outcome_products(TotalSpin j, HalfInt x) {
    require_index(j, x, "x");
    std::vector<double> out(static_cast<std::size_t>(j.dimension()));
    const bool closed = x.twice() == j.two_j() || x.twice() == -j.two_j() ||
                        (x.twice() == 0 && j.is_integer());
    for (int k = 0; k < j.dimension(); ++k) {
        const HalfInt m = j.index(k);
        out[k] = closed ? envelope_product(j, m, x) : d_edge(j, m, +1) * wigner_d(j, m, x);
    }
    return out;
}

}  // namespace gkp

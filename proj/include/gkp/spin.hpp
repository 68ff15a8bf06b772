#pragma once

// Wigner small-d matrix elements at beta = pi/2 for a collective spin J.
//
// Angular-momentum labels are half-integers and are stored exactly as twice
// their value, so parity tests such as "J + m is an integer" never touch
// floating point.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace gkp {

/// Exact half-integer, stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

    /// Parses "4", "-4", "+4", "9/2", "-9/2", "4.5". Throws InvalidIndex on
    /// anything that is not an exact half-integer.
    static HalfInt parse(const std::string& text);

    /// Exact conversion; throws InvalidIndex unless 2*value is an integer.
    static HalfInt from_double(double value);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const;

private:
    constexpr explicit HalfInt(int twice) : twice_(twice) {}
    int twice_ = 0;
};

/// Total collective spin J of an ensemble of N = 2J spin-1/2 particles.
class TotalSpin {
public:
    constexpr TotalSpin() = default;
    /// Throws DomainError for negative two_j.
    explicit TotalSpin(int two_j);

    static TotalSpin from_double(double j);

    constexpr int two_j() const { return two_j_; }
    constexpr double value() const { return 0.5 * two_j_; }
    constexpr bool is_integer() const { return two_j_ % 2 == 0; }
    constexpr HalfInt as_half_int() const { return HalfInt::from_twice(two_j_); }
    constexpr int dimension() const { return two_j_ + 1; }
    constexpr auto operator<=>(const TotalSpin&) const = default;

    /// True when -J <= m <= J and J + m is an integer.
    constexpr bool admits(HalfInt m) const {
        const int t = m.twice();
        return t >= -two_j_ && t <= two_j_ && ((two_j_ + t) % 2 == 0);
    }

    /// Magnetic index of the k-th basis state, k = 0 .. 2J, ordered -J .. +J.
    constexpr HalfInt index(int k) const { return HalfInt::from_twice(2 * k - two_j_); }
    /// Inverse of index(); m must be admitted.
    constexpr int slot(HalfInt m) const { return (m.twice() + two_j_) / 2; }

    std::vector<HalfInt> indices() const;

private:
    int two_j_ = 0;
};

/// Throws InvalidIndex if m is not a valid magnetic index for j.
void require_index(TotalSpin j, HalfInt m, const char* what = "m");

enum class DMethod {
    ExplicitSum,  ///< alternating factorial sum, summed exactly in integers
    Jacobi,       ///< Jacobi polynomial at zero via three-term recurrence
};

/// d^{(J)}_{m,m'}(pi/2) = <J,m| exp(-i pi/2 J_y) |J,m'>.
double wigner_d(TotalSpin j, HalfInt m, HalfInt m_prime, DMethod method = DMethod::Jacobi);

/// d_{m,+J} (sign = +1) or d_{m,-J} (sign = -1), single-term closed form.
double d_edge(TotalSpin j, HalfInt m, int sign);

/// d_{m,0} for integer J; zero whenever J + m is odd.
double d_center(TotalSpin j, HalfInt m);

/// Product d_{m,J} d_{m,x} for x in {+J, -J, 0} from the closed binomial forms.
double envelope_product(TotalSpin j, HalfInt m, HalfInt x);

/// Gaussian (de Moivre-Laplace) approximation of envelope_product.
double gaussian_envelope_approx(TotalSpin j, HalfInt m, HalfInt x);

/// d_{m,J} d_{m,x} for all m = -J .. J; closed forms for x in {+J, -J, 0}.
std::vector<double> outcome_products(TotalSpin j, HalfInt x);

/// Column d_{m,x} for all m = -J .. J (index k <-> m = -J + k).
std::vector<double> d_column(TotalSpin j, HalfInt x, DMethod method = DMethod::Jacobi);

/// Jacobi polynomial P_n^{(a,b)}(0) from the three-term recurrence in n.
double jacobi_at_zero(int n, int a, int b);

/// log of the binomial coefficient C(n, k) for real n, k (gamma extension).
double log_binomial(double n, double k);

}  // namespace gkp

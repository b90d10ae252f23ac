#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "glq/field.hpp"

namespace glq {

/// Polynomial over F_q, coefficients low-to-high, no trailing zeros.
/// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
public:
    Poly() : field_(nullptr) {}
    explicit Poly(const Field& f) : field_(&f) {}
    Poly(const Field& f, std::vector<Fel> coeffs) : field_(&f), c_(std::move(coeffs)) { trim(); }

    static Poly x(const Field& f) { return {f, {0, 1}}; }
    static Poly constant(const Field& f, Fel a) { return {f, {a}}; }
    /// x - a
    static Poly x_minus(const Field& f, Fel a) { return {f, {f.neg(a), 1}}; }

    const Field& field() const { return *field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    bool monic() const { return !c_.empty() && c_.back() == 1; }
    Fel coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    const std::vector<Fel>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& o) const;
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    Poly pow(std::uint32_t e) const;

    Fel eval(Fel x) const;

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    /// Degree first, then coefficients compared high-to-low.
    bool operator<(const Poly& o) const;

    std::size_t hash() const;
    std::string to_string() const;

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    const Field* field_;
    std::vector<Fel> c_;
};

/// Monic irreducible polynomials over F_q of the given degree, in the
/// canonical order of Poly::operator<.  Built by trial-division sieve and
/// cached per field; degree <= 8.
const std::vector<Poly>& irreducibles(const Field& f, int degree);

/// Factor a monic nonzero polynomial of degree <= 8 into monic irreducible
/// factors with multiplicities, sorted canonically.
/// Throws NotMonicError.
std::vector<std::pair<Poly, int>> factor_poly(const Poly& f);

}  // namespace glq

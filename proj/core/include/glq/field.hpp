#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "glq/numeric.hpp"

namespace glq {

/// An element of a finite field, encoded as an index in [0, q).
/// The base-p digits of the index are the coordinates of the element in the
/// power basis 1, x, x^2, ... of F_p[x]/(modulus).
using Fel = std::uint32_t;

/// The field F_q, q = p^f <= 2^20, with log/antilog tables.
///
/// The modulus is the Conway polynomial C_{p,f} when the shipped table has
/// it, otherwise the lexicographically smallest monic primitive polynomial
/// of degree f over F_p.  Either way the class of x is a primitive element
/// and is used as the generator, so the discrete-log indexing of F_q^* is
/// identical across runs.
class Field {
public:
    static constexpr std::uint64_t kMaxCardinality = 1u << 20;

    /// Cached, immutable field object (safe for concurrent use).
    /// Throws NonPrimeError / TooLargeError.
    static const Field& get(std::uint32_t p, std::uint32_t f);

    std::uint32_t p() const { return p_; }
    std::uint32_t f() const { return f_; }
    std::uint32_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Fel zero() const { return 0; }
    Fel one() const { return 1; }
    Fel generator() const { return gen_; }

    /// The residue of the integer k (embedding of the prime field).
    Fel from_int(std::int64_t k) const
    {
        std::int64_t r = k % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<Fel>(r);
    }

    Fel add(Fel a, Fel b) const;
    Fel sub(Fel a, Fel b) const;
    Fel neg(Fel a) const;
    Fel mul(Fel a, Fel b) const
    {
        if (a == 0 || b == 0) return 0;
        return exp_at(static_cast<std::uint64_t>(log_[a]) + log_[b]);
    }
    /// Throws Error on zero.
    Fel inv(Fel a) const;
    Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }
    Fel pow(Fel a, std::int64_t e) const;

    /// Discrete log base the fixed generator; a must be nonzero.
    std::uint32_t dlog(Fel a) const;
    /// generator^k.
    Fel exp(std::uint64_t k) const { return exp_at(k); }

    /// Trace down to the prime field, returned as an integer in [0, p).
    std::uint32_t trace_to_prime(Fel a) const;

    std::string to_string(Fel a) const;

private:
    Field(std::uint32_t p, std::uint32_t f);

    Fel exp_at(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

    std::uint32_t p_, f_, q_;
    Fel gen_ = 0;
    std::vector<std::uint32_t> modulus_;       // monic, low-to-high, length f+1
    std::vector<Fel> exp_;                     // size q-1: dlog -> element
    std::vector<std::uint32_t> log_;           // size q: element -> dlog (log_[0] unused)
    std::vector<std::uint32_t> trace_;         // size q: element -> trace in [0,p)
};

/// make_field(p, f) -> F_{p^f}.  Deterministic for fixed (p, f).
const Field& make_field(std::uint32_t p, std::uint32_t f);

/// psi_a(x) = exp(2 pi i Tr_{F_q/F_p}(a x) / p); nontrivial iff a != 0.
class AdditiveCharacter {
public:
    AdditiveCharacter(const Field& field, Fel a) : field_(&field), a_(a) {}

    const Field& field() const { return *field_; }
    Fel twist() const { return a_; }
    bool trivial() const { return a_ == 0; }

    cxd operator()(Fel x) const
    {
        if (a_ == 0) return {1.0, 0.0};
        const std::uint32_t t = field_->trace_to_prime(field_->mul(a_, x));
        return unit_root(t, field_->p());
    }

    AdditiveCharacter inverse() const { return {*field_, field_->neg(a_)}; }

private:
    const Field* field_;
    Fel a_;
};

inline AdditiveCharacter default_psi(const Field& field)
{
    return {field, field.one()};
}

}  // namespace glq

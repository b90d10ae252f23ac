#pragma once

#include <cstdint>
#include <vector>

#include "glq/field.hpp"
#include "glq/numeric.hpp"

namespace glq {

/// The degree-n extension F_{q^n} of a base field F_q, with the norm and
/// trace maps down to the base and an explicit compatible embedding of the
/// base into the top field.
class ExtensionField {
public:
    /// Cached, immutable; throws TooLargeError when q^n > 2^20.
    static const ExtensionField& get(const Field& base, std::uint32_t n);

    const Field& base() const { return *base_; }
    const Field& top() const { return *top_; }
    std::uint32_t n() const { return n_; }

    /// Image of a base element in the top field.
    Fel embed(Fel base_elem) const { return embed_[base_elem]; }
    /// Preimage in the base field; the element must lie in the image.
    Fel to_base(Fel top_elem) const;
    bool in_base(Fel top_elem) const { return to_base_[top_elem] >= 0; }

    /// Frobenius of the base, x -> x^q.
    Fel frobenius(Fel x) const { return top_->pow(x, base_->q()); }

    /// N(x) = prod x^{q^i}, Tr(x) = sum x^{q^i}, both returned in the base.
    Fel norm(Fel x) const;
    Fel trace(Fel x) const;

private:
    ExtensionField(const Field& base, std::uint32_t n);

    const Field* base_;
    const Field* top_;
    std::uint32_t n_;
    std::vector<Fel> embed_;
    std::vector<std::int32_t> to_base_;
};

const ExtensionField& ext_of(const Field& base, std::uint32_t n);

/// norm_trace(x) over a constructed extension.
std::pair<Fel, Fel> norm_trace(const ExtensionField& ext, Fel x);

/// Multiplicative character alpha_k of F^* for the field the index lives
/// over: alpha_k(g^j) = zeta_{q-1}^{kj} for the fixed generator g.
class MultChar {
public:
    MultChar(const Field& field, std::uint64_t k) : field_(&field), k_(k % (field.q() - 1)) {}

    const Field& field() const { return *field_; }
    std::uint64_t index() const { return k_; }
    bool trivial() const { return k_ == 0; }

    cxd operator()(Fel x) const
    {
        return unit_root(static_cast<std::int64_t>(k_ * field_->dlog(x) % (field_->q() - 1)),
                         field_->q() - 1);
    }

    MultChar inverse() const { return {*field_, (field_->q() - 1 - k_) % (field_->q() - 1)}; }

    bool operator==(const MultChar& o) const { return field_ == o.field_ && k_ == o.k_; }

private:
    const Field* field_;
    std::uint64_t k_;
};

/// mult_char(ext, k): character of the top field F_{q^n}^*.
MultChar mult_char(const ExtensionField& ext, std::uint64_t k);

/// Orbit of a character index under multiplication by q modulo q^n - 1.
/// "Regular" means the orbit has full size n.
struct FrobeniusOrbit {
    std::uint32_t n = 0;                  // extension degree
    std::vector<std::uint64_t> indices;   // orbit, smallest member first

    std::uint64_t rep() const { return indices.front(); }
    bool regular() const { return indices.size() == n; }
};

/// All q^n - 1 character indices partitioned into Frobenius orbits,
/// sorted by smallest member.
std::vector<FrobeniusOrbit> frobenius_orbits(const ExtensionField& ext);

/// The orbit containing index k.
FrobeniusOrbit frobenius_orbit_of(const ExtensionField& ext, std::uint64_t k);

/// Number of size-n orbits by Moebius counting: (1/n) sum_{d|n} mu(d) (q^{n/d}-1).
std::uint64_t regular_orbit_count(std::uint64_t q, std::uint32_t n);

/// sum_{xi in F_{q^n}^*} alpha^{-1}(xi) chi^{-1}(N(xi)) psi(Tr(xi)),
/// for alpha on the top field of ext, chi on the base, psi on the base.
cxd gauss_sum(const ExtensionField& ext, const MultChar& alpha, const MultChar& chi,
              const AdditiveCharacter& psi);

}  // namespace glq

#include "glq/extension.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "glq/errors.hpp"
#include "glq/poly.hpp"

namespace glq {

ExtensionField::ExtensionField(const Field& base, std::uint32_t n) : base_(&base), n_(n)
{
    std::uint64_t qn = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        qn *= base.q();
        if (qn > Field::kMaxCardinality) throw TooLargeError("extension cardinality exceeds 2^20");
    }
    top_ = &Field::get(base.p(), base.f() * n);

    // Embedding F_q -> F_{q^n}: send the base generator to a root of the
    // base modulus.  With Conway moduli G^{(q^n-1)/(q-1)} is that root; if
    // the moduli are non-Conway fallbacks, search for the smallest root.
    const std::uint64_t e = (top_->q() - 1) / (base.q() - 1);
    Fel root = top_->exp(e);
    {
        Poly bm(*top_);
        std::vector<Fel> lifted;  // base modulus has prime-field coefficients
        for (auto c : base.modulus()) lifted.push_back(static_cast<Fel>(c));
        bm = Poly(*top_, std::move(lifted));
        if (bm.eval(root) != 0) {
            bool found = false;
            for (Fel x = 0; x < top_->q() && !found; ++x)
                if (bm.eval(x) == 0 && top_->pow(x, base.q() - 1) == 1 && x != 0) {
                    root = x;
                    found = true;
                }
            if (!found) throw InternalCheckError("base modulus has no root in extension");
        }
    }

    embed_.assign(base.q(), 0);
    to_base_.assign(top_->q(), -1);
    // base element with coordinates (c_0..c_{f-1}) maps to sum c_i root^i
    for (Fel a = 0; a < base.q(); ++a) {
        Fel img = 0;
        Fel t = a;
        Fel rpow = top_->one();
        for (std::uint32_t i = 0; i < base.f(); ++i) {
            const Fel digit = static_cast<Fel>(t % base.p());
            if (digit != 0) img = top_->add(img, top_->mul(digit, rpow));
            t /= base.p();
            rpow = top_->mul(rpow, root);
        }
        embed_[a] = img;
        to_base_[img] = static_cast<std::int32_t>(a);
    }
    // embedding must be an injective homomorphism fixing the prime field
    if (embed_[base.one()] != top_->one()) throw InternalCheckError("embedding does not fix 1");
}

Fel ExtensionField::to_base(Fel top_elem) const
{
    const std::int32_t b = to_base_[top_elem];
    if (b < 0) throw Error("element not in the base field");
    return static_cast<Fel>(b);
}

Fel ExtensionField::norm(Fel x) const
{
    if (x == 0) return 0;
    // N(x) = x^{(q^n-1)/(q-1)}
    const std::uint64_t e = (top_->q() - 1) / (base_->q() - 1);
    return to_base(top_->pow(x, static_cast<std::int64_t>(e)));
}

Fel ExtensionField::trace(Fel x) const
{
    Fel acc = 0;
    Fel conj = x;
    for (std::uint32_t i = 0; i < n_; ++i) {
        acc = top_->add(acc, conj);
        conj = frobenius(conj);
    }
    return to_base(acc);
}

const ExtensionField& ExtensionField::get(const Field& base, std::uint32_t n)
{
    static std::mutex mu;
    static std::map<std::pair<const Field*, std::uint32_t>, std::unique_ptr<ExtensionField>> cache;
    if (n == 0) throw Error("extension degree must be positive");
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(&base, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<ExtensionField>(new ExtensionField(base, n))).first;
    return *it->second;
}

const ExtensionField& ext_of(const Field& base, std::uint32_t n)
{
    return ExtensionField::get(base, n);
}

std::pair<Fel, Fel> norm_trace(const ExtensionField& ext, Fel x)
{
    return {ext.norm(x), ext.trace(x)};
}

MultChar mult_char(const ExtensionField& ext, std::uint64_t k) { return {ext.top(), k}; }

std::vector<FrobeniusOrbit> frobenius_orbits(const ExtensionField& ext)
{
    const std::uint64_t m = ext.top().q() - 1;
    const std::uint64_t q = ext.base().q();
    std::vector<bool> seen(m, false);
    std::vector<FrobeniusOrbit> orbits;
    for (std::uint64_t k = 0; k < m; ++k) {
        if (seen[k]) continue;
        FrobeniusOrbit orb;
        orb.n = ext.n();
        std::uint64_t j = k;
        do {
            orb.indices.push_back(j);
            seen[j] = true;
            j = j * q % m;
        } while (j != k);
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

FrobeniusOrbit frobenius_orbit_of(const ExtensionField& ext, std::uint64_t k)
{
    const std::uint64_t m = ext.top().q() - 1;
    const std::uint64_t q = ext.base().q();
    k %= m;
    FrobeniusOrbit orb;
    orb.n = ext.n();
    std::uint64_t j = k;
    std::uint64_t least = k;
    do {
        j = j * q % m;
        least = std::min(least, j);
    } while (j != k);
    j = least;
    do {
        orb.indices.push_back(j);
        j = j * q % m;
    } while (j != least);
    return orb;
}

std::uint64_t regular_orbit_count(std::uint64_t q, std::uint32_t n)
{
    auto mu = [](std::uint32_t m) -> std::int64_t {
        std::int64_t r = 1;
        for (std::uint32_t d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                m /= d;
                if (m % d == 0) return 0;
                r = -r;
            }
        }
        if (m > 1) r = -r;
        return r;
    };
    std::int64_t total = 0;
    for (std::uint32_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        std::uint64_t qd = 1;
        for (std::uint32_t i = 0; i < n / d; ++i) qd *= q;
        total += mu(d) * static_cast<std::int64_t>(qd - 1);
    }
    return static_cast<std::uint64_t>(total / n);
}

cxd gauss_sum(const ExtensionField& ext, const MultChar& alpha, const MultChar& chi,
              const AdditiveCharacter& psi)
{
    const MultChar ainv = alpha.inverse();
    const MultChar cinv = chi.inverse();
    KahanSum acc;
    for (Fel xi = 1; xi < ext.top().q(); ++xi) {
        cxd term = ainv(xi);
        const Fel nr = ext.norm(xi);
        term *= cinv(nr);
        term *= psi(ext.trace(xi));
        acc.add(term);
    }
    return acc.value();
}

}  // namespace glq

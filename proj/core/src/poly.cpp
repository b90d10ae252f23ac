#include "glq/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "glq/errors.hpp"

namespace glq {

Poly Poly::operator+(const Poly& o) const
{
    std::vector<Fel> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->add(coeff(i), o.coeff(i));
    return {*field_, std::move(r)};
}

Poly Poly::operator-(const Poly& o) const
{
    std::vector<Fel> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = field_->sub(coeff(i), o.coeff(i));
    return {*field_, std::move(r)};
}

Poly Poly::operator*(const Poly& o) const
{
    if (zero() || o.zero()) return Poly(*field_);
    std::vector<Fel> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            r[i + j] = field_->add(r[i + j], field_->mul(c_[i], o.c_[j]));
    }
    return {*field_, std::move(r)};
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const
{
    if (o.zero()) throw Error("polynomial division by zero");
    std::vector<Fel> rem = c_;
    const int dq = degree() - o.degree();
    if (dq < 0) return {Poly(*field_), *this};
    std::vector<Fel> quot(dq + 1, 0);
    const Fel lead_inv = field_->inv(o.c_.back());
    for (int i = dq; i >= 0; --i) {
        if (rem.size() < o.c_.size() + i) continue;
        const Fel factor = field_->mul(rem[o.degree() + i], lead_inv);
        if (factor == 0) {
            rem.pop_back();
            continue;
        }
        quot[i] = factor;
        for (std::size_t j = 0; j < o.c_.size(); ++j)
            rem[i + j] = field_->sub(rem[i + j], field_->mul(factor, o.c_[j]));
        rem.pop_back();
    }
    return {Poly(*field_, std::move(quot)), Poly(*field_, std::move(rem))};
}

Poly Poly::pow(std::uint32_t e) const
{
    Poly r = Poly::constant(*field_, 1);
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Fel Poly::eval(Fel x) const
{
    Fel acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
    return acc;
}

bool Poly::operator<(const Poly& o) const
{
    if (degree() != o.degree()) return degree() < o.degree();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::size_t Poly::hash() const
{
    std::size_t h = 1469598103934665603ull;
    for (Fel v : c_) {
        h ^= v + 1;
        h *= 1099511628211ull;
    }
    return h;
}

std::string Poly::to_string() const
{
    if (zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c_[i] != 1) s += std::to_string(c_[i]);
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

namespace {

constexpr int kMaxSieveDegree = 8;

struct Sieve {
    std::vector<std::vector<Poly>> by_degree;  // [d] = monic irreducibles of degree d
    int built = 0;
};

// Extend the sieve to cover the requested degree: enumerate monic
// polynomials and trial-divide by the known lower-degree irreducibles.
void extend_sieve(Sieve& s, const Field& F, int degree)
{
    if (s.by_degree.empty()) s.by_degree.resize(kMaxSieveDegree + 1);
    for (int d = s.built + 1; d <= degree; ++d) {
        std::vector<Poly>& out = s.by_degree[d];
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= F.q();
        for (std::uint64_t k = 0; k < total; ++k) {
            std::vector<Fel> c(d + 1, 0);
            std::uint64_t t = k;
            for (int i = 0; i < d; ++i) {
                c[i] = static_cast<Fel>(t % F.q());
                t /= F.q();
            }
            c[d] = 1;
            Poly cand(F, std::move(c));
            bool irred = true;
            for (int e = 1; 2 * e <= d && irred; ++e)
                for (const Poly& g : s.by_degree[e]) {
                    if ((cand % g).zero()) {
                        irred = false;
                        break;
                    }
                }
            if (irred) out.push_back(std::move(cand));
        }
        std::sort(out.begin(), out.end());
        s.built = d;
    }
}

}  // namespace

const std::vector<Poly>& irreducibles(const Field& f, int degree)
{
    if (degree < 1 || degree > kMaxSieveDegree) throw Error("irreducibles: degree out of range");
    static std::mutex mu;
    static std::map<const Field*, Sieve> sieves;
    std::lock_guard<std::mutex> lk(mu);
    Sieve& s = sieves[&f];
    if (s.built < degree) extend_sieve(s, f, degree);
    return s.by_degree[degree];
}

std::vector<std::pair<Poly, int>> factor_poly(const Poly& f)
{
    if (f.zero() || !f.monic()) throw NotMonicError("factor_poly requires a monic nonzero polynomial");
    if (f.degree() > kMaxSieveDegree) throw TooLargeError("factor_poly: degree > 8");
    const Field& F = f.field();
    std::vector<std::pair<Poly, int>> out;
    Poly rest = f;
    for (int d = 1; d <= rest.degree() && rest.degree() > 0; ++d) {
        if (2 * d > rest.degree()) break;  // remaining part is irreducible
        for (const Poly& g : irreducibles(F, d)) {
            if (rest.degree() < d) break;
            int mult = 0;
            while (true) {
                auto [q, r] = rest.divmod(g);
                if (!r.zero()) break;
                rest = q;
                ++mult;
            }
            if (mult > 0) out.emplace_back(g, mult);
        }
    }
    if (rest.degree() > 0) out.emplace_back(rest, 1);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

}  // namespace glq

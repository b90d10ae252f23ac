#include "glq/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "glq/conway.hpp"
#include "glq/errors.hpp"

namespace glq {

namespace {

using Coeffs = std::vector<std::uint32_t>;  // low-to-high over F_p

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n)
{
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

void trim(Coeffs& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Coeffs poly_mod(Coeffs a, const Coeffs& m, std::uint32_t p)
{
    const std::size_t dm = m.size() - 1;
    trim(a);
    while (a.size() > dm) {
        const std::uint64_t lead = a.back();
        if (lead != 0) {
            const std::size_t off = a.size() - 1 - dm;
            for (std::size_t i = 0; i <= dm; ++i)
                a[off + i] = static_cast<std::uint32_t>(
                    (a[off + i] + p - static_cast<std::uint64_t>(m[i]) * lead % p) % p);
        }
        a.pop_back();
        trim(a);
    }
    return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint32_t p)
{
    if (a.empty() || b.empty()) return {};
    Coeffs r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
    return poly_mod(std::move(r), m, p);
}

Coeffs poly_powmod(Coeffs base, std::uint64_t e, const Coeffs& m, std::uint32_t p)
{
    Coeffs r{1};
    base = poly_mod(std::move(base), m, p);
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

// ord(x) == p^f - 1 in F_p[x]/(f) forces f irreducible and x primitive.
bool is_primitive_modulus(const Coeffs& m, std::uint32_t p, std::uint32_t f)
{
    if (m[0] == 0) return false;
    std::uint64_t q1 = 1;
    for (std::uint32_t i = 0; i < f; ++i) q1 *= p;
    q1 -= 1;
    const Coeffs x{0, 1};
    if (poly_powmod(x, q1, m, p) != Coeffs{1}) return false;
    for (auto r : prime_factors(q1))
        if (poly_powmod(x, q1 / r, m, p) == Coeffs{1}) return false;
    return true;
}

Coeffs select_modulus(std::uint32_t p, std::uint32_t f)
{
    if (auto c = ConwayTable::builtin().lookup(p, f)) return *c;
    // Fallback: smallest monic primitive polynomial, coefficients compared
    // high-to-low (equivalently by packed base-p index).
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < f; ++i) total *= p;
    for (std::uint64_t k = 0; k < total; ++k) {
        Coeffs m(f + 1, 0);
        std::uint64_t t = k;
        for (std::uint32_t i = 0; i < f; ++i) {
            m[i] = static_cast<std::uint32_t>(t % p);
            t /= p;
        }
        m[f] = 1;
        if (is_primitive_modulus(m, p, f)) return m;
    }
    throw InternalCheckError("no primitive modulus found");  // unreachable
}

}  // namespace

Field::Field(std::uint32_t p, std::uint32_t f) : p_(p), f_(f)
{
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < f; ++i) {
        q *= p;
        if (q > kMaxCardinality) throw TooLargeError("field cardinality exceeds 2^20");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_.resize(f + 1);
    auto sel = select_modulus(p, f);
    std::copy(sel.begin(), sel.end(), modulus_.begin());

    auto pack = [&](const Coeffs& c) {
        std::uint64_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
        return static_cast<Fel>(v);
    };

    // exp/log via repeated multiplication by the class of x.
    const Coeffs gen = poly_mod(Coeffs{0, 1}, sel, p);
    gen_ = pack(gen);
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    Coeffs cur{1};
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
        const Fel idx = pack(cur);
        exp_[k] = idx;
        if (k > 0 && idx == 1) throw InternalCheckError("generator order below q-1");
        log_[idx] = k;
        cur = poly_mulmod(cur, gen, sel, p);
    }
    if (pack(cur) != 1) throw InternalCheckError("generator order not q-1");

    // Trace table: Tr(a) = sum of a^{p^i}, lands in the prime field.
    trace_.assign(q_, 0);
    for (Fel a = 1; a < q_; ++a) {
        std::uint64_t conj = log_[a];
        Fel acc = 0;
        for (std::uint32_t i = 0; i < f_; ++i) {
            acc = add(acc, exp_[conj]);
            conj = conj * p_ % (q_ - 1);
        }
        if (acc >= p_) throw InternalCheckError("trace not in prime field");
        trace_[a] = acc;
    }
}

Fel Field::add(Fel a, Fel b) const
{
    if (p_ == 2) return a ^ b;
    Fel r = 0, mult = 1;
    for (std::uint32_t i = 0; i < f_; ++i) {
        const std::uint32_t d = (a % p_ + b % p_) % p_;
        r += d * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

Fel Field::neg(Fel a) const
{
    if (p_ == 2) return a;
    Fel r = 0, mult = 1;
    for (std::uint32_t i = 0; i < f_; ++i) {
        const std::uint32_t d = (p_ - a % p_) % p_;
        r += d * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

Fel Field::sub(Fel a, Fel b) const { return add(a, neg(b)); }

Fel Field::inv(Fel a) const
{
    if (a == 0) throw Error("division by zero in F_q");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Fel Field::pow(Fel a, std::int64_t e) const
{
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) throw Error("0 to a negative power");
        return 0;
    }
    const std::int64_t m = q_ - 1;
    std::int64_t k = (static_cast<std::int64_t>(log_[a]) * (e % m)) % m;
    if (k < 0) k += m;
    return exp_[k];
}

std::uint32_t Field::dlog(Fel a) const
{
    if (a == 0) throw Error("dlog of zero");
    return log_[a];
}

std::uint32_t Field::trace_to_prime(Fel a) const { return trace_[a]; }

std::string Field::to_string(Fel a) const
{
    if (f_ == 1) return std::to_string(a);
    std::ostringstream os;
    os << a << "#";  // index form; digits are the power-basis coordinates
    return os.str();
}

const Field& Field::get(std::uint32_t p, std::uint32_t f)
{
    static std::mutex mu;
    static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<Field>> fields;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(p, f);
    auto it = fields.find(key);
    if (it == fields.end()) {
        if (!is_prime(p)) throw NonPrimeError("p = " + std::to_string(p) + " is not prime");
        if (f == 0) throw Error("extension degree must be positive");
        it = fields.emplace(key, std::unique_ptr<Field>(new Field(p, f))).first;
    }
    return *it->second;
}

const Field& make_field(std::uint32_t p, std::uint32_t f) { return Field::get(p, f); }

}  // namespace glq

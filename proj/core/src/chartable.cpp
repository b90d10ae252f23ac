#include "glq/chartable.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>

#include "glq/errors.hpp"
#include "glq/group.hpp"

namespace glq {

namespace detail {
// Implemented in cache.cpp.
std::unique_ptr<CharacterTable> try_load_table(const Field& F, int n, const std::string& dir);
void try_save_table(const CharacterTable& table, const std::string& dir);
}  // namespace detail

cxd lift(const CycloValue& v)
{
    cxd acc{0.0, 0.0};
    for (const CycloTerm& t : v)
        acc += static_cast<double>(t.coeff) * unit_root(t.exp, t.order);
    return acc;
}

namespace {

// ---- arithmetic mod the Dixon prime ----------------------------------------

std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powm(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulm(r, a, m);
        a = mulm(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invm(std::uint64_t a, std::uint64_t m) { return powm(a, m - 2, m); }

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

std::uint64_t primitive_root(std::uint64_t ell)
{
    const auto factors = prime_factors_u64(ell - 1);
    for (std::uint64_t g = 2; g < ell; ++g) {
        bool ok = true;
        for (auto r : factors)
            if (powm(g, (ell - 1) / r, ell) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw InternalCheckError("no primitive root found");
}

// Tonelli-Shanks square root mod an odd prime.
std::uint64_t sqrtm(std::uint64_t a, std::uint64_t ell)
{
    a %= ell;
    if (a == 0) return 0;
    if (powm(a, (ell - 1) / 2, ell) != 1) throw InternalCheckError("sqrtm: not a residue");
    if (ell % 4 == 3) return powm(a, (ell + 1) / 4, ell);
    std::uint64_t s = ell - 1;
    std::uint64_t e = 0;
    while (s % 2 == 0) {
        s /= 2;
        ++e;
    }
    std::uint64_t nonres = 2;
    while (powm(nonres, (ell - 1) / 2, ell) != ell - 1) ++nonres;
    std::uint64_t x = powm(a, (s + 1) / 2, ell);
    std::uint64_t b = powm(a, s, ell);
    std::uint64_t g = powm(nonres, s, ell);
    std::uint64_t r = e;
    while (true) {
        std::uint64_t t = b;
        std::uint64_t m = 0;
        while (t != 1) {
            t = mulm(t, t, ell);
            ++m;
        }
        if (m == 0) return x;
        const std::uint64_t gs = powm(g, std::uint64_t(1) << (r - m - 1), ell);
        g = mulm(gs, gs, ell);
        x = mulm(x, gs, ell);
        b = mulm(b, g, ell);
        r = m;
    }
}

using Vec = std::vector<std::uint64_t>;
using Matl = std::vector<Vec>;  // dense matrix mod ell, row-major rows

// char poly of M (d x d) mod ell by Faddeev-LeVerrier (needs ell > d).
Vec char_poly_modl(const Matl& M, std::uint64_t ell)
{
    const std::size_t d = M.size();
    Vec coeff(d + 1, 0);
    coeff[d] = 1;
    Matl B(d, Vec(d, 0));
    for (std::size_t i = 0; i < d; ++i) B[i][i] = 1;
    for (std::size_t k = 1; k <= d; ++k) {
        // A = M * B
        Matl A(d, Vec(d, 0));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t t = 0; t < d; ++t) {
                if (M[i][t] == 0) continue;
                for (std::size_t j = 0; j < d; ++j)
                    A[i][j] = (A[i][j] + mulm(M[i][t], B[t][j], ell)) % ell;
            }
        std::uint64_t tr = 0;
        for (std::size_t i = 0; i < d; ++i) tr = (tr + A[i][i]) % ell;
        const std::uint64_t ck = mulm(ell - tr % ell, invm(k % ell, ell), ell) % ell;
        coeff[d - k] = ck;
        B = A;
        for (std::size_t i = 0; i < d; ++i) B[i][i] = (B[i][i] + ck) % ell;
    }
    return coeff;
}

std::uint64_t eval_poly_modl(const Vec& p, std::uint64_t x, std::uint64_t ell)
{
    std::uint64_t acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = (mulm(acc, x, ell) + p[i]) % ell;
    return acc;
}

// Basis of ker(M) mod ell, as column vectors.
std::vector<Vec> kernel_modl(Matl M, std::uint64_t ell)
{
    const std::size_t d = M.size();
    std::vector<int> pivot_col_of_row(d, -1);
    std::vector<bool> is_pivot_col(d, false);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < d && rank < d; ++c) {
        std::size_t piv = rank;
        while (piv < d && M[piv][c] == 0) ++piv;
        if (piv == d) continue;
        std::swap(M[piv], M[rank]);
        const std::uint64_t inv = invm(M[rank][c], ell);
        for (std::size_t j = 0; j < d; ++j) M[rank][j] = mulm(M[rank][j], inv, ell);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == rank || M[r][c] == 0) continue;
            const std::uint64_t f = M[r][c];
            for (std::size_t j = 0; j < d; ++j)
                M[r][j] = (M[r][j] + ell - mulm(f, M[rank][j], ell)) % ell;
        }
        pivot_col_of_row[rank] = static_cast<int>(c);
        is_pivot_col[c] = true;
        ++rank;
    }
    std::vector<Vec> basis;
    for (std::size_t c = 0; c < d; ++c) {
        if (is_pivot_col[c]) continue;
        Vec v(d, 0);
        v[c] = 1;
        for (std::size_t r = 0; r < rank; ++r)
            v[pivot_col_of_row[r]] = (ell - M[r][c]) % ell;
        basis.push_back(std::move(v));
    }
    return basis;
}

// Left inverse S (d x c) of a full-column-rank V (c x d): S V = I_d.
Matl left_inverse(const std::vector<Vec>& cols, std::size_t c, std::uint64_t ell)
{
    const std::size_t d = cols.size();
    Matl aug(c, Vec(d + c, 0));
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < d; ++j) aug[i][j] = cols[j][i];
        aug[i][d + i] = 1;
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = rank;
        while (piv < c && aug[piv][col] == 0) ++piv;
        if (piv == c) throw InternalCheckError("left_inverse: rank deficient");
        std::swap(aug[piv], aug[rank]);
        const std::uint64_t inv = invm(aug[rank][col], ell);
        for (std::size_t j = 0; j < d + c; ++j) aug[rank][j] = mulm(aug[rank][j], inv, ell);
        for (std::size_t r = 0; r < c; ++r) {
            if (r == rank || aug[r][col] == 0) continue;
            const std::uint64_t f = aug[r][col];
            for (std::size_t j = 0; j < d + c; ++j)
                aug[r][j] = (aug[r][j] + ell - mulm(f, aug[rank][j], ell)) % ell;
        }
        ++rank;
    }
    Matl S(d, Vec(c, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < c; ++j) S[i][j] = aug[i][d + j];
    return S;
}

}  // namespace

// ---- construction -----------------------------------------------------------

CharacterTable::CharacterTable(const Field& F, int n) : F_(&F), n_(n)
{
    classes_ = &ClassData::get(F, n);
    // the table is quadratic in the class count
    if (classes_->count() > 4096)
        throw EnvelopeExceededError("character table limited to 4096 conjugacy classes, got " +
                                    std::to_string(classes_->count()));
    if (n == 1)
        build_direct_gl1();
    else
        build_dixon();
    sort_rows();
    compute_lifts();
    compute_metadata();
}

CharacterTable::CharacterTable(const Field& F, int n, Raw raw) : F_(&F), n_(n)
{
    classes_ = &ClassData::get(F, n);
    const int c = classes_->count();
    if (static_cast<int>(raw.dims.size()) != c) throw Error("cached table: wrong irrep count");
    std::uint64_t sum = 0;
    for (auto d : raw.dims) sum += static_cast<std::uint64_t>(d) * d;
    if (sum != classes_->group_order()) throw Error("cached table: dimension check failed");
    dims_ = std::move(raw.dims);
    values_ = std::move(raw.values);
    whit_ = std::move(raw.whit);
    cuspidal_ = std::move(raw.cuspidal);
    contragredient_ = std::move(raw.contragredient);
    support_ = std::move(raw.support);
    orbit_tag_ = std::move(raw.orbit_tag);
    ell_ = raw.ell;
    exponent_ = raw.exponent;
    compute_lifts();
}

CharacterTable::~CharacterTable() = default;

CharacterTable::Raw CharacterTable::raw() const
{
    Raw r;
    r.dims = dims_;
    r.values = values_;
    r.whit = whit_;
    r.cuspidal = cuspidal_;
    r.contragredient = contragredient_;
    r.support = support_;
    r.orbit_tag = orbit_tag_;
    r.ell = ell_;
    r.exponent = exponent_;
    return r;
}

std::unique_ptr<CharacterTable> CharacterTable::from_raw(const Field& F, int n, Raw raw)
{
    return std::unique_ptr<CharacterTable>(new CharacterTable(F, n, std::move(raw)));
}

void CharacterTable::build_direct_gl1()
{
    const ClassData& cd = *classes_;
    const std::uint32_t q = F_->q();
    exponent_ = cd.exponent();
    ell_ = 0;
    const int c = cd.count();
    for (std::uint32_t k = 0; k < q - 1; ++k) {
        std::vector<CycloValue> row(c);
        for (int i = 0; i < c; ++i) {
            const Mat& rep = cd.representative(i);
            const std::uint64_t d = cd.element_order(i);
            const std::uint64_t la = (rep(0, 0) == F_->one()) ? 0 : F_->dlog(rep(0, 0));
            const std::uint64_t e = static_cast<std::uint64_t>(k) * la % (q - 1);
            // zeta_{q-1}^e = zeta_d^{e / ((q-1)/d)}
            row[i].push_back({static_cast<std::uint32_t>(d),
                              static_cast<std::uint32_t>(e / ((q - 1) / d)), 1});
        }
        dims_.push_back(1);
        values_.push_back(std::move(row));
    }
}

void CharacterTable::build_dixon()
{
    const ClassData& cd = *classes_;
    const int c = cd.count();
    const std::uint64_t G = cd.group_order();
    exponent_ = cd.exponent();

    // Dixon prime: l = 1 (mod exp G), l > 2 sqrt|G|.
    const std::uint64_t bound = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(G))) + 1;
    std::uint64_t ell = exponent_ + 1;
    while (ell <= bound || !is_prime_u64(ell)) ell += exponent_;
    ell_ = ell;

    // Bucket the group by class.
    std::vector<std::vector<std::uint64_t>> stream(c);
    for (int i = 0; i < c; ++i) stream[i].reserve(cd.size(i));
    for_each_group_element(*F_, n_, [&](const Mat& g) {
        stream[cd.index_of(g)].push_back(g.pack());
    });
    for (int i = 0; i < c; ++i)
        if (stream[i].size() != cd.size(i))
            throw InternalCheckError("class size mismatch against enumeration");

    // Split the center of the group algebra into common eigenlines of the
    // class matrices.
    std::vector<std::vector<Vec>> blocks;  // each block: list of column vectors (size c)
    {
        std::vector<Vec> full;
        for (int i = 0; i < c; ++i) {
            Vec e(c, 0);
            e[i] = 1;
            full.push_back(std::move(e));
        }
        blocks.push_back(std::move(full));
    }

    for (int i = 0; i < c; ++i) {
        bool any_big = false;
        for (const auto& b : blocks)
            if (b.size() > 1) any_big = true;
        if (!any_big) break;

        // class matrix B_i[j][k] = #{x in C_i : class(x^{-1} z_k) = j}
        Matl Bi(c, Vec(c, 0));
        std::vector<Mat> inv_elems;
        inv_elems.reserve(stream[i].size());
        for (std::uint64_t key : stream[i])
            inv_elems.push_back(Mat::unpack(*F_, n_, key).inverse());
        for (int k = 0; k < c; ++k) {
            const Mat& z = cd.representative(k);
            for (const Mat& xi : inv_elems) {
                const int j = cd.index_of(xi * z);
                Bi[j][k] += 1;
            }
        }
        for (auto& row : Bi)
            for (auto& v : row) v %= ell;

        std::vector<std::vector<Vec>> next;
        for (auto& block : blocks) {
            const std::size_t d = block.size();
            if (d == 1) {
                next.push_back(std::move(block));
                continue;
            }
            // Restrict Bi to the block: M = S * Bi * V.
            const Matl S = left_inverse(block, c, ell);
            std::vector<Vec> BiV;
            for (const Vec& v : block) {
                Vec w(c, 0);
                for (int r = 0; r < c; ++r) {
                    std::uint64_t acc = 0;
                    for (int t = 0; t < c; ++t)
                        if (Bi[r][t] && v[t]) acc = (acc + mulm(Bi[r][t], v[t], ell)) % ell;
                    w[r] = acc;
                }
                BiV.push_back(std::move(w));
            }
            Matl M(d, Vec(d, 0));
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t r = 0; r < d; ++r) {
                    std::uint64_t acc = 0;
                    for (int t = 0; t < c; ++t)
                        if (S[r][t] && BiV[j][t]) acc = (acc + mulm(S[r][t], BiV[j][t], ell)) % ell;
                    M[r][j] = acc;
                }

            const Vec cpoly = char_poly_modl(M, ell);
            std::vector<Vec> sub_blocks_cols;
            for (std::uint64_t lam = 0; lam < ell; ++lam) {
                if (eval_poly_modl(cpoly, lam, ell) != 0) continue;
                Matl Ml = M;
                for (std::size_t t = 0; t < d; ++t) Ml[t][t] = (Ml[t][t] + ell - lam) % ell;
                const auto kb = kernel_modl(Ml, ell);
                if (kb.empty()) continue;
                std::vector<Vec> sub;
                for (const Vec& kv : kb) {
                    Vec col(c, 0);
                    for (std::size_t j = 0; j < d; ++j) {
                        if (kv[j] == 0) continue;
                        for (int r = 0; r < c; ++r)
                            col[r] = (col[r] + mulm(kv[j], block[j][r], ell)) % ell;
                    }
                    sub.push_back(std::move(col));
                }
                next.push_back(std::move(sub));
            }
        }
        blocks = std::move(next);
    }

    if (static_cast<int>(blocks.size()) != c)
        throw InternalCheckError("Dixon splitting incomplete: " + std::to_string(blocks.size()) +
                                 " blocks for " + std::to_string(c) + " classes");

    // Normalize each central-character vector at the identity class.
    const int id = cd.identity_class();
    std::vector<Vec> omegas;
    for (auto& b : blocks) {
        Vec w = b[0];
        if (w[id] == 0) throw InternalCheckError("omega vanishes at the identity class");
        const std::uint64_t s = invm(w[id], ell);
        for (auto& v : w) v = mulm(v, s, ell);
        omegas.push_back(std::move(w));
    }

    // Dimensions from the orthogonality relation.
    std::uint64_t dim_square_sum = 0;
    std::vector<std::uint64_t> dims_mod;
    std::vector<std::int64_t> dims_int;
    for (const Vec& w : omegas) {
        std::uint64_t s = 0;
        for (int i = 0; i < c; ++i) {
            const std::uint64_t term =
                mulm(mulm(w[i], w[cd.inverse_class(i)], ell), invm(cd.size(i) % ell, ell), ell);
            s = (s + term) % ell;
        }
        const std::uint64_t d2 = mulm(G % ell, invm(s, ell), ell);
        std::uint64_t dmod = sqrtm(d2, ell);
        dmod = std::min(dmod, ell - dmod);
        dims_mod.push_back(dmod);
        dims_int.push_back(static_cast<std::int64_t>(dmod));
        dim_square_sum += dmod * dmod;
    }
    if (dim_square_sum != G)
        throw InternalCheckError("sum of squared dimensions != |G|");

    // Character values mod l, then lift through the power map.
    const std::uint64_t root = powm(primitive_root(ell), (ell - 1) / exponent_, ell);
    std::vector<std::vector<std::uint64_t>> chi_mod(c, std::vector<std::uint64_t>(c, 0));
    for (int t = 0; t < c; ++t)
        for (int i = 0; i < c; ++i)
            chi_mod[t][i] =
                mulm(mulm(dims_mod[t], omegas[t][i], ell), invm(cd.size(i) % ell, ell), ell);

    // Per class: the list of power classes rep^j, j = 0..ord-1.
    std::vector<std::vector<int>> pow_classes(c);
    for (int i = 0; i < c; ++i) {
        const std::uint64_t ord = cd.element_order(i);
        Mat p = Mat::identity(*F_, n_);
        for (std::uint64_t j = 0; j < ord; ++j) {
            pow_classes[i].push_back(cd.index_of(p));
            p = p * cd.representative(i);
        }
    }

    dims_ = dims_int;
    values_.assign(c, std::vector<CycloValue>(c));
    for (int t = 0; t < c; ++t) {
        for (int i = 0; i < c; ++i) {
            const std::uint64_t ord = cd.element_order(i);
            const std::uint64_t zi = powm(root, exponent_ / ord, ell);
            const std::uint64_t zi_inv = invm(zi, ell);
            const std::uint64_t ord_inv = invm(ord % ell, ell);
            CycloValue val;
            std::uint64_t mult_total = 0;
            for (std::uint64_t s = 0; s < ord; ++s) {
                std::uint64_t acc = 0;
                std::uint64_t zpow = 1;  // zi^{-s j}
                const std::uint64_t zis = powm(zi_inv, s, ell);
                for (std::uint64_t j = 0; j < ord; ++j) {
                    acc = (acc + mulm(chi_mod[t][pow_classes[i][j]], zpow, ell)) % ell;
                    zpow = mulm(zpow, zis, ell);
                }
                const std::uint64_t m = mulm(acc, ord_inv, ell);
                if (m != 0) {
                    if (m > static_cast<std::uint64_t>(dims_int[t]))
                        throw InternalCheckError("eigenvalue multiplicity out of range");
                    val.push_back({static_cast<std::uint32_t>(ord), static_cast<std::uint32_t>(s),
                                   static_cast<std::int64_t>(m)});
                    mult_total += m;
                }
            }
            if (mult_total != static_cast<std::uint64_t>(dims_int[t]))
                throw InternalCheckError("eigenvalue multiplicities do not sum to dim");
            values_[t][i] = std::move(val);
        }
    }
}

void CharacterTable::sort_rows()
{
    const int c = static_cast<int>(dims_.size());
    std::vector<int> order(c);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (dims_[a] != dims_[b]) return dims_[a] < dims_[b];
        return values_[a] < values_[b];
    });
    std::vector<std::int64_t> dims;
    std::vector<std::vector<CycloValue>> values;
    for (int t : order) {
        dims.push_back(dims_[t]);
        values.push_back(std::move(values_[t]));
    }
    dims_ = std::move(dims);
    values_ = std::move(values);
}

void CharacterTable::compute_lifts()
{
    lifts_.clear();
    for (const auto& row : values_) {
        std::vector<cxd> lr;
        lr.reserve(row.size());
        for (const auto& v : row) lr.push_back(lift(v));
        lifts_.push_back(std::move(lr));
    }
}

// ---- metadata ---------------------------------------------------------------

std::int64_t CharacterTable::whittaker_multiplicity(int row, const AdditiveCharacter& psi) const
{
    if (psi.trivial()) throw Error("whittaker_multiplicity needs a nontrivial psi");
    KahanSum acc;
    std::uint64_t count = 0;
    for_each_subgroup_element(*F_, n_, SubgroupKind::upper_unipotent, {}, [&](const Mat& u) {
        acc.add(value_at(row, u) * std::conj(psi_on_U(psi, u)));
        ++count;
    });
    const cxd avg = acc.value() / static_cast<double>(count);
    std::int64_t m = 0;
    if (!nearest_integer(avg, m) || m < 0)
        throw NonIntegralError("whittaker multiplicity not a nonnegative integer");
    return m;
}

cxd CharacterTable::central_character(int row, Fel a) const
{
    return value_at(row, Mat::scalar(*F_, n_, a)) / static_cast<double>(dims_[row]);
}

int CharacterTable::support_multiplicity(int row, const SupportEntry& sigma) const
{
    int m = 0;
    for (const auto& e : support_[row])
        if (e == sigma) ++m;
    return m;
}

int CharacterTable::generic_of_support(const std::vector<SupportEntry>& multiset) const
{
    std::vector<SupportEntry> key = multiset;
    std::sort(key.begin(), key.end());
    int found = -1;
    for (int t = 0; t < irrep_count(); ++t) {
        if (!is_generic(t) || support_[t] != key) continue;
        if (found >= 0) throw InternalCheckError("generic constituent not unique");
        found = t;
    }
    if (found < 0) throw InternalCheckError("no generic irrep with the given support");
    return found;
}

int CharacterTable::cuspidal_row_by_orbit(std::uint64_t orbit_rep) const
{
    for (int t = 0; t < irrep_count(); ++t)
        if (cuspidal_[t] && orbit_tag_[t] == static_cast<std::int64_t>(orbit_rep)) return t;
    throw Error("no cuspidal irrep with orbit tag " + std::to_string(orbit_rep));
}

FrobeniusOrbit CharacterTable::orbit_of(int row) const
{
    if (orbit_tag_[row] < 0) throw OrbitUnidentifiedError("row has no Frobenius orbit");
    return frobenius_orbit_of(ext_of(*F_, n_), static_cast<std::uint64_t>(orbit_tag_[row]));
}

std::vector<int> CharacterTable::generic_rows() const
{
    std::vector<int> out;
    for (int t = 0; t < irrep_count(); ++t)
        if (is_generic(t)) out.push_back(t);
    return out;
}

std::vector<int> CharacterTable::cuspidal_rows() const
{
    std::vector<int> out;
    for (int t = 0; t < irrep_count(); ++t)
        if (cuspidal_[t]) out.push_back(t);
    return out;
}

std::int64_t CharacterTable::inner_with_row(const std::vector<cxd>& f, int row) const
{
    const cxd v = inner(f, lifts_[row]);
    std::int64_t m = 0;
    if (!nearest_integer(v, m, 1e-6) || m < 0)
        throw NonIntegralError("inner product with an irreducible is not a nonnegative integer");
    return m;
}

cxd CharacterTable::inner(const std::vector<cxd>& f, const std::vector<cxd>& g) const
{
    KahanSum acc;
    for (int i = 0; i < classes_->count(); ++i)
        acc.add(static_cast<double>(classes_->size(i)) * f[i] * std::conj(g[i]));
    return acc.value() / static_cast<double>(classes_->group_order());
}

// Conjugation data for one parabolic: for every class of G, the multiset of
// Levi-block class tuples arising from conjugates landing in P.
struct CharacterTable::InductionData {
    std::vector<int> composition;
    std::uint64_t parabolic_order = 0;
    // per class: (tuple of block class indices, count)
    std::vector<std::map<std::vector<int>, std::uint64_t>> tuples;
};

const CharacterTable::InductionData& CharacterTable::induction_data(
    const std::vector<int>& comp) const
{
    std::lock_guard<std::mutex> lk(induction_mu_);
    auto it = induction_.find(comp);
    if (it != induction_.end()) return *it->second;

    auto data = std::make_unique<InductionData>();
    data->composition = comp;
    data->parabolic_order = subgroup_order(*F_, n_, SubgroupKind::parabolic, comp);
    const int c = classes_->count();
    data->tuples.resize(c);

    std::vector<int> offsets(comp.size() + 1, 0);
    for (std::size_t b = 0; b < comp.size(); ++b) offsets[b + 1] = offsets[b] + comp[b];
    std::vector<const ClassData*> block_classes;
    for (int part : comp) block_classes.push_back(&ClassData::get(*F_, part));

    for_each_group_element(*F_, n_, [&](const Mat& x) {
        const Mat xi = x.inverse();
        for (int i = 0; i < c; ++i) {
            const Mat y = x * classes_->representative(i) * xi;
            bool in_p = true;
            for (std::size_t b = 0; b + 1 < comp.size() && in_p; ++b)
                for (int r = offsets[b + 1]; r < n_ && in_p; ++r)
                    for (int cc = offsets[b]; cc < offsets[b + 1]; ++cc)
                        if (y(r, cc) != 0) {
                            in_p = false;
                            break;
                        }
            if (!in_p) continue;
            std::vector<int> tuple;
            tuple.reserve(comp.size());
            for (std::size_t b = 0; b < comp.size(); ++b)
                tuple.push_back(block_classes[b]->index_of(y.block(offsets[b], offsets[b], comp[b])));
            data->tuples[i][tuple] += 1;
        }
    });

    auto& slot = induction_[comp];
    slot = std::move(data);
    return *slot;
}

std::vector<cxd> CharacterTable::induce_from_levi(const std::vector<int>& comp,
                                                  const std::vector<IrrepHandle>& factors) const
{
    int total = 0;
    for (int part : comp) total += part;
    if (total != n_ || comp.empty())
        throw CompositionMismatchError("composition does not sum to n");
    if (factors.size() != comp.size())
        throw CompositionMismatchError("factor count does not match composition");
    for (std::size_t b = 0; b < comp.size(); ++b) {
        if (!factors[b].valid() || factors[b].table->n() != comp[b] ||
            &factors[b].table->field() != F_)
            throw CompositionMismatchError("factor " + std::to_string(b) +
                                           " is not an irrep of GL_" + std::to_string(comp[b]));
    }

    const InductionData& data = induction_data(comp);
    const int c = classes_->count();
    std::vector<cxd> out(c);
    for (int i = 0; i < c; ++i) {
        KahanSum acc;
        for (const auto& [tuple, count] : data.tuples[i]) {
            cxd prod{1.0, 0.0};
            for (std::size_t b = 0; b < comp.size(); ++b)
                prod *= factors[b].table->value(factors[b].row, tuple[b]);
            acc.add(static_cast<double>(count) * prod);
        }
        out[i] = acc.value() / static_cast<double>(data.parabolic_order);
    }
    return out;
}

namespace {

std::vector<std::vector<int>> proper_compositions(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rest) {
        if (rest == 0) {
            if (cur.size() >= 2) out.push_back(cur);
            return;
        }
        for (int part = 1; part <= rest; ++part) {
            cur.push_back(part);
            rec(rest - part);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

}  // namespace

void CharacterTable::compute_metadata()
{
    const int c = irrep_count();
    const AdditiveCharacter psi = default_psi(*F_);

    whit_.resize(c);
    for (int t = 0; t < c; ++t) whit_[t] = whittaker_multiplicity(t, psi);

    // Cuspidality: no nonzero N-invariant vector for any proper composition.
    cuspidal_.assign(c, 1);
    for (const auto& comp : proper_compositions(n_)) {
        std::vector<KahanSum> acc(c);
        std::uint64_t count = 0;
        for_each_subgroup_element(*F_, n_, SubgroupKind::unipotent_radical, comp,
                                  [&](const Mat& u) {
                                      const int cls = classes_->index_of(u);
                                      for (int t = 0; t < c; ++t) acc[t].add(lifts_[t][cls]);
                                      ++count;
                                  });
        for (int t = 0; t < c; ++t)
            if (!nearly_zero(acc[t].value() / static_cast<double>(count))) cuspidal_[t] = 0;
    }

    // Contragredient: match exact values at inverse classes.
    contragredient_.assign(c, -1);
    for (int t = 0; t < c; ++t) {
        for (int u = 0; u < c; ++u) {
            bool match = true;
            for (int i = 0; i < classes_->count() && match; ++i)
                if (values_[u][i] != values_[t][classes_->inverse_class(i)]) match = false;
            if (match) {
                contragredient_[t] = u;
                break;
            }
        }
        if (contragredient_[t] < 0) throw InternalCheckError("contragredient row not found");
    }

    // Frobenius-orbit tags for cuspidal rows, by matching Green's elliptic
    // values against every regular orbit on every elliptic class.
    orbit_tag_.assign(c, -1);
    {
        const ExtensionField& ext = ext_of(*F_, n_);
        std::vector<int> elliptic;  // classes with irreducible characteristic polynomial
        for (int i = 0; i < classes_->count(); ++i) {
            const ClassLabel& l = classes_->label(i);
            if (l.parts.size() == 1 && l.parts[0].first.degree() == n_ &&
                l.parts[0].second == std::vector<int>{1})
                elliptic.push_back(i);
        }
        // one eigenvalue per elliptic class
        std::vector<Fel> eigen;
        for (int i : elliptic) {
            const Poly& f = classes_->label(i).parts[0].first;
            Fel root = 0;
            bool found = false;
            for (Fel x = 1; x < ext.top().q() && !found; ++x) {
                Fel acc = 0;
                for (int d = f.degree(); d >= 0; --d)
                    acc = ext.top().add(ext.top().mul(acc, x), ext.embed(f.coeff(d)));
                if (acc == 0) {
                    root = x;
                    found = true;
                }
            }
            if (!found) throw InternalCheckError("elliptic class has no eigenvalue in F_{q^n}");
            eigen.push_back(root);
        }
        std::vector<FrobeniusOrbit> regular;
        for (auto& orb : frobenius_orbits(ext))
            if (orb.regular()) regular.push_back(orb);

        const double sign = (n_ % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n-1}
        for (int t = 0; t < c; ++t) {
            if (!cuspidal_[t]) continue;
            int matched = -1;
            for (const auto& orb : regular) {
                bool ok = true;
                for (std::size_t ei = 0; ei < elliptic.size() && ok; ++ei) {
                    const std::uint64_t lx = ext.top().dlog(eigen[ei]);
                    KahanSum g;
                    for (std::uint64_t j : orb.indices)
                        g.add(unit_root(static_cast<std::int64_t>(j % (ext.top().q() - 1) * lx %
                                                                  (ext.top().q() - 1)),
                                        ext.top().q() - 1));
                    const cxd green = sign * g.value();
                    if (!nearly_zero(green - lifts_[t][elliptic[ei]], 1e-8)) ok = false;
                }
                if (ok) {
                    if (matched >= 0)
                        throw AmbiguousOrbitError("two regular orbits match a cuspidal row");
                    matched = static_cast<int>(orb.rep());
                }
            }
            if (matched < 0)
                throw InternalCheckError("no regular orbit matches a cuspidal row");
            orbit_tag_[t] = matched;
        }
    }

    // Cuspidal supports: cuspidal rows support themselves; the rest are
    // located by exhaustive search through parabolic inductions of cuspidal
    // multisets, partitions in decreasing lexicographic order.
    support_.assign(c, {});
    std::vector<char> have(c, 0);
    for (int t = 0; t < c; ++t)
        if (cuspidal_[t]) {
            support_[t] = {SupportEntry{n_, t}};
            have[t] = 1;
        }
    auto parts_list = partitions_of(n_);
    std::sort(parts_list.begin(), parts_list.end(), std::greater<>());
    for (const auto& partition : parts_list) {
        if (partition.size() < 2) continue;
        // cuspidal candidates per distinct block size, ordered by orbit tag
        std::vector<const CharacterTable*> tabs;
        for (int part : partition) tabs.push_back(&CharacterTable::get(*F_, part));
        std::vector<std::vector<int>> cusp_sorted;
        for (std::size_t b = 0; b < partition.size(); ++b) {
            std::vector<int> rows = tabs[b]->cuspidal_rows();
            std::sort(rows.begin(), rows.end(), [&](int a, int bb) {
                return tabs[b]->orbit_tag(a) < tabs[b]->orbit_tag(bb);
            });
            cusp_sorted.push_back(std::move(rows));
        }
        // enumerate multisets: nondecreasing candidate positions within runs
        // of equal block size
        std::vector<int> choice(partition.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t b) {
            if (b == partition.size()) {
                std::vector<IrrepHandle> handles;
                std::vector<SupportEntry> multiset;
                for (std::size_t j = 0; j < partition.size(); ++j) {
                    const int row = cusp_sorted[j][choice[j]];
                    handles.push_back({tabs[j], row});
                    multiset.push_back({partition[j], row});
                }
                std::sort(multiset.begin(), multiset.end());
                const auto ind = induce_from_levi(partition, handles);
                for (int t = 0; t < c; ++t) {
                    if (have[t]) continue;
                    if (inner_with_row(ind, t) >= 1) {
                        support_[t] = multiset;
                        have[t] = 1;
                    }
                }
                return;
            }
            const int lo =
                (b > 0 && partition[b] == partition[b - 1]) ? choice[b - 1] : 0;
            for (int i = lo; i < static_cast<int>(cusp_sorted[b].size()); ++i) {
                choice[b] = i;
                rec(b + 1);
            }
        };
        rec(0);
    }
    for (int t = 0; t < c; ++t)
        if (!have[t]) throw InternalCheckError("cuspidal support not found for a row");
}

// ---- registry ---------------------------------------------------------------

namespace {

std::recursive_mutex& registry_mutex()
{
    static std::recursive_mutex mu;
    return mu;
}

std::map<std::pair<const Field*, int>, std::unique_ptr<CharacterTable>>& registry_map()
{
    static std::map<std::pair<const Field*, int>, std::unique_ptr<CharacterTable>> m;
    return m;
}

std::string& cache_dir_ref()
{
    static std::string dir = [] {
        const char* env = std::getenv("GLQ_CACHE_DIR");
        return std::string(env ? env : "");
    }();
    return dir;
}

}  // namespace

void set_cache_dir(const std::string& dir)
{
    std::lock_guard<std::recursive_mutex> lk(registry_mutex());
    cache_dir_ref() = dir;
}

std::string cache_dir()
{
    std::lock_guard<std::recursive_mutex> lk(registry_mutex());
    return cache_dir_ref();
}

const CharacterTable& CharacterTable::get(const Field& F, int n)
{
    std::lock_guard<std::recursive_mutex> lk(registry_mutex());
    auto key = std::make_pair(&F, n);
    auto& map = registry_map();
    auto it = map.find(key);
    if (it != map.end()) return *it->second;

    check_envelope(F, n);
    const std::string dir = cache_dir_ref();
    if (!dir.empty()) {
        if (auto loaded = detail::try_load_table(F, n, dir)) {
            auto [pos, ok] = map.emplace(key, std::move(loaded));
            (void)ok;
            return *pos->second;
        }
    }
    auto built = std::unique_ptr<CharacterTable>(new CharacterTable(F, n));
    if (!dir.empty()) detail::try_save_table(*built, dir);
    auto [pos, ok] = map.emplace(key, std::move(built));
    (void)ok;
    return *pos->second;
}

const Field& field_of_order(std::uint64_t q)
{
    if (q < 2) throw UsageError("q must be a prime power >= 2");
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    std::uint32_t f = 0;
    std::uint64_t t = q;
    while (t > 1) {
        if (t % p != 0) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
        t /= p;
        ++f;
    }
    return Field::get(static_cast<std::uint32_t>(p), f);
}

const CharacterTable& character_table(std::uint64_t q, int n)
{
    return CharacterTable::get(field_of_order(q), n);
}

}  // namespace glq

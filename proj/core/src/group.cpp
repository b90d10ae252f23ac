#include "glq/group.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

#include "glq/errors.hpp"

namespace glq {

std::uint64_t gl_order(std::uint64_t q, int n)
{
    unsigned __int128 qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    unsigned __int128 ord = 1;
    unsigned __int128 qi = 1;
    for (int i = 0; i < n; ++i) {
        ord *= qn - qi;
        qi *= q;
        if (ord > static_cast<unsigned __int128>(1) << 90)
            throw TooLargeError("group order overflow");
    }
    return static_cast<std::uint64_t>(ord);
}

void check_envelope(const Field& F, int n)
{
    if (n < 1 || n > kMaxGroupDim)
        throw EnvelopeExceededError("GL_n supported only for 1 <= n <= 4, got n = " + std::to_string(n));
    std::uint64_t ord;
    try {
        ord = gl_order(F.q(), n);
    } catch (const TooLargeError&) {
        throw EnvelopeExceededError("|GL_" + std::to_string(n) + "(F_" + std::to_string(F.q()) +
                                    ")| exceeds the envelope of " + std::to_string(kMaxGroupOrder));
    }
    if (ord > kMaxGroupOrder)
        throw EnvelopeExceededError("|GL_" + std::to_string(n) + "(F_" + std::to_string(F.q()) +
                                    ")| = " + std::to_string(ord) + " exceeds the envelope of " +
                                    std::to_string(kMaxGroupOrder));
}

GroupEnum::GroupEnum(const Field& F, int n) : F_(&F), n_(n)
{
    check_envelope(F, n);
    space_ = 1;
    for (int i = 0; i < n * n; ++i) space_ *= F.q();
    order_ = gl_order(F.q(), n);
}

void GroupEnum::for_each_range(std::uint64_t lo, std::uint64_t hi, const MatVisitor& fn) const
{
    hi = std::min(hi, space_);
    for (std::uint64_t key = lo; key < hi; ++key) {
        Mat m = Mat::unpack(*F_, n_, key);
        if (m.det() != 0) fn(m);
    }
}

void for_each_group_element(const Field& F, int n, const MatVisitor& fn)
{
    GroupEnum(F, n).for_each(fn);
}

std::vector<Mat> group_elements(const Field& F, int n)
{
    std::vector<Mat> out;
    out.reserve(gl_order(F.q(), n));
    for_each_group_element(F, n, [&](const Mat& m) { out.push_back(m); });
    return out;
}

namespace {

void validate_composition(int n, const std::vector<int>& comp)
{
    if (comp.empty()) throw CompositionMismatchError("empty composition");
    int s = 0;
    for (int part : comp) {
        if (part <= 0) throw CompositionMismatchError("composition parts must be positive");
        s += part;
    }
    if (s != n) throw CompositionMismatchError("composition does not sum to n");
}

// Positions strictly above the block diagonal of the composition.
std::vector<std::pair<int, int>> superblock_positions(const std::vector<int>& comp)
{
    std::vector<int> block_of;
    for (std::size_t b = 0; b < comp.size(); ++b)
        for (int i = 0; i < comp[b]; ++i) block_of.push_back(static_cast<int>(b));
    const int n = static_cast<int>(block_of.size());
    std::vector<std::pair<int, int>> pos;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (block_of[i] < block_of[j]) pos.emplace_back(i, j);
    return pos;
}

// Enumerate assignments of field values to the given positions on top of a
// base matrix, in little-endian counter order.
void enumerate_free_entries(const Field& F, Mat base,
                            const std::vector<std::pair<int, int>>& pos, const MatVisitor& fn)
{
    std::vector<Fel> vals(pos.size(), 0);
    while (true) {
        for (std::size_t t = 0; t < pos.size(); ++t) base(pos[t].first, pos[t].second) = vals[t];
        fn(base);
        std::size_t t = 0;
        for (; t < pos.size(); ++t) {
            if (++vals[t] < F.q()) break;
            vals[t] = 0;
        }
        if (t == pos.size()) break;
    }
}

// Enumerate block-diagonal Levi elements diag(g_1,...,g_r), then hand each
// to fn for decoration.
void enumerate_levi(const Field& F, int n, const std::vector<int>& comp, const MatVisitor& fn)
{
    std::vector<int> offsets(comp.size() + 1, 0);
    for (std::size_t b = 0; b < comp.size(); ++b) offsets[b + 1] = offsets[b] + comp[b];
    std::function<void(std::size_t, Mat)> rec = [&](std::size_t b, Mat acc) {
        if (b == comp.size()) {
            fn(acc);
            return;
        }
        for_each_group_element(F, comp[b], [&](const Mat& g) {
            Mat next = acc;
            next.set_block(offsets[b], offsets[b], g);
            rec(b + 1, next);
        });
    };
    rec(0, Mat::identity(F, n));
}

}  // namespace

std::uint64_t subgroup_order(const Field& F, int n, SubgroupKind kind,
                             const std::vector<int>& comp)
{
    const std::uint64_t q = F.q();
    auto qpow = [&](int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= q;
        return r;
    };
    switch (kind) {
        case SubgroupKind::upper_unipotent:
            return qpow(n * (n - 1) / 2);
        case SubgroupKind::unipotent_radical: {
            validate_composition(n, comp);
            return qpow(static_cast<int>(superblock_positions(comp).size()));
        }
        case SubgroupKind::levi: {
            validate_composition(n, comp);
            std::uint64_t r = 1;
            for (int part : comp) r *= gl_order(q, part);
            return r;
        }
        case SubgroupKind::parabolic: {
            validate_composition(n, comp);
            return subgroup_order(F, n, SubgroupKind::levi, comp) *
                   subgroup_order(F, n, SubgroupKind::unipotent_radical, comp);
        }
        case SubgroupKind::mirabolic:
            return gl_order(q, n - 1) * qpow(n - 1);
        case SubgroupKind::center:
            return q - 1;
    }
    throw Error("unknown subgroup kind");
}

void for_each_subgroup_element(const Field& F, int n, SubgroupKind kind,
                               const std::vector<int>& comp, const MatVisitor& fn)
{
    check_envelope(F, n);
    switch (kind) {
        case SubgroupKind::upper_unipotent: {
            std::vector<std::pair<int, int>> pos;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) pos.emplace_back(i, j);
            enumerate_free_entries(F, Mat::identity(F, n), pos, fn);
            return;
        }
        case SubgroupKind::unipotent_radical: {
            validate_composition(n, comp);
            enumerate_free_entries(F, Mat::identity(F, n), superblock_positions(comp), fn);
            return;
        }
        case SubgroupKind::levi: {
            validate_composition(n, comp);
            enumerate_levi(F, n, comp, fn);
            return;
        }
        case SubgroupKind::parabolic: {
            validate_composition(n, comp);
            const auto pos = superblock_positions(comp);
            enumerate_levi(F, n, comp,
                           [&](const Mat& levi) { enumerate_free_entries(F, levi, pos, fn); });
            return;
        }
        case SubgroupKind::mirabolic: {
            if (n == 1) {
                fn(Mat::identity(F, 1));
                return;
            }
            std::vector<std::pair<int, int>> pos;
            for (int i = 0; i < n - 1; ++i) pos.emplace_back(i, n - 1);
            for_each_group_element(F, n - 1, [&](const Mat& g) {
                Mat base = Mat::identity(F, n);
                base.set_block(0, 0, g);
                enumerate_free_entries(F, base, pos, fn);
            });
            return;
        }
        case SubgroupKind::center: {
            for (Fel a = 1; a < F.q(); ++a) fn(Mat::scalar(F, n, a));
            return;
        }
    }
    throw Error("unknown subgroup kind");
}

std::vector<Mat> subgroup_elements(const Field& F, int n, SubgroupKind kind,
                                   const std::vector<int>& comp)
{
    std::vector<Mat> out;
    for_each_subgroup_element(F, n, kind, comp, [&](const Mat& m) { out.push_back(m); });
    return out;
}

Fel superdiagonal_sum(const Mat& u)
{
    const Field& F = u.field();
    Fel s = 0;
    for (int i = 0; i + 1 < u.dim(); ++i) s = F.add(s, u(i, i + 1));
    return s;
}

cxd psi_on_U(const AdditiveCharacter& psi, const Mat& u)
{
    if (!u.is_upper_unitriangular()) throw NotUnipotentError("psi_on_U: not upper unitriangular");
    return psi(superdiagonal_sum(u));
}

Mat coset_canonical(const Mat& g)
{
    const Field& F = g.field();
    const int n = g.dim();
    Mat m = g;
    std::vector<bool> used(n, false);
    for (int j = 0; j < n; ++j) {
        int piv = -1;
        for (int i = n - 1; i >= 0; --i)
            if (!used[i] && m(i, j) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;  // cannot happen for invertible g
        used[piv] = true;
        const Fel inv = F.inv(m(piv, j));
        for (int r = 0; r < piv; ++r) {
            if (m(r, j) == 0) continue;
            const Fel factor = F.mul(m(r, j), inv);
            // row_r -= factor * row_piv  (left multiplication from U_n)
            for (int c = 0; c < n; ++c) m(r, c) = F.sub(m(r, c), F.mul(factor, m(piv, c)));
        }
    }
    return m;
}

std::vector<Mat> coset_reps_U(const Field& F, int n)
{
    std::vector<Mat> out;
    for_each_coset_rep(F, n, [&](const Mat& m) { out.push_back(m); });
    return out;
}

const std::vector<Mat>& coset_transversal(const Field& F, int n)
{
    static std::mutex mu;
    static std::map<std::pair<const Field*, int>, std::unique_ptr<std::vector<Mat>>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(&F, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<std::vector<Mat>>(coset_reps_U(F, n))).first;
    return *it->second;
}

void for_each_coset_rep(const Field& F, int n, const MatVisitor& fn)
{
    for_each_group_element(F, n, [&](const Mat& g) {
        if (coset_canonical(g) == g) fn(g);
    });
}

DoubleCosetForm double_coset_canonical(const Mat& g)
{
    const Field& F = g.field();
    const int n = g.dim();
    Mat m = g;
    Fel sum_left = 0, sum_right = 0;
    std::vector<bool> used(n, false);
    for (int j = 0; j < n; ++j) {
        int piv = -1;
        for (int i = n - 1; i >= 0; --i)
            if (!used[i] && m(i, j) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw Error("double_coset_canonical: singular matrix");
        used[piv] = true;
        const Fel inv = F.inv(m(piv, j));
        // clear column j above the pivot (row ops = left U_n action)
        for (int r = 0; r < piv; ++r) {
            if (m(r, j) == 0) continue;
            const Fel c = F.neg(F.mul(m(r, j), inv));
            for (int col = 0; col < n; ++col) m(r, col) = F.add(m(r, col), F.mul(c, m(piv, col)));
            if (piv == r + 1) sum_left = F.add(sum_left, c);
        }
        // clear row piv to the right of j (column ops = right U_n action)
        for (int c2 = j + 1; c2 < n; ++c2) {
            if (m(piv, c2) == 0) continue;
            const Fel c = F.neg(F.mul(m(piv, c2), inv));
            for (int row = 0; row < n; ++row)
                m(row, c2) = F.add(m(row, c2), F.mul(c, m(row, j)));
            if (c2 == j + 1) sum_right = F.add(sum_right, c);
        }
    }
    // g = u1 m u2 with superdiagonal sums -sum_left and -sum_right.
    return {m, F.neg(sum_left), F.neg(sum_right)};
}

std::optional<std::pair<Mat, Mat>> pwu_decompose(const Mat& g, int m, int n)
{
    const Field& F = g.field();
    const int N = n + m;
    if (g.dim() != N) throw Error("pwu_decompose: dimension mismatch");

    // membership criterion: the bottom-left n x n minor is invertible
    Mat C = g.block(m, 0, n);
    if (C.det() == 0) return std::nullopt;
    const Mat Cinv = C.inverse();

    // B = bottom-right n x m block; u = (I_n, C^{-1} B; 0, I_m) in the
    // column split (n | m), lifted to U_{n+m}
    Mat u = Mat::identity(F, N);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            Fel v = 0;
            for (int k = 0; k < n; ++k) v = F.add(v, F.mul(Cinv(i, k), g(m + k, n + j)));
            u(i, n + j) = v;
        }

    const Mat w = weyl_block(F, n, m);
    const Mat p = g * u.inverse() * w.inverse();
    // p must land in P_{m,n}
    for (int i = m; i < N; ++i)
        for (int j = 0; j < m; ++j)
            if (p(i, j) != 0) throw InternalCheckError("pwu_decompose: factor not in P_{m,n}");
    return std::make_pair(p, u);
}

}  // namespace glq

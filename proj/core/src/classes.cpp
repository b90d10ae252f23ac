#include "glq/classes.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "glq/errors.hpp"

namespace glq {

bool ClassLabel::operator<(const ClassLabel& o) const
{
    return std::lexicographical_compare(
        parts.begin(), parts.end(), o.parts.begin(), o.parts.end(),
        [](const auto& a, const auto& b) {
            if (a.first == b.first) return a.second < b.second;
            return a.first < b.first;
        });
}

std::size_t ClassLabel::hash() const
{
    std::size_t h = 14695981039346656037ull;
    for (const auto& [f, lam] : parts) {
        h ^= f.hash();
        h *= 1099511628211ull;
        for (int part : lam) {
            h ^= static_cast<std::size_t>(part) + 0x9e3779b9;
            h *= 1099511628211ull;
        }
    }
    return h;
}

std::string ClassLabel::to_string() const
{
    std::ostringstream os;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << " ";
        os << "(" << parts[i].first.to_string() << ";";
        for (std::size_t j = 0; j < parts[i].second.size(); ++j) {
            if (j) os << ",";
            os << parts[i].second[j];
        }
        os << ")";
    }
    return os.str();
}

Mat poly_at_matrix(const Poly& f, const Mat& g)
{
    const Field& F = g.field();
    Mat acc = Mat::zero(F, g.dim());
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * g;
        const Fel c = f.coeff(i);
        if (c != 0)
            for (int d = 0; d < g.dim(); ++d) acc(d, d) = F.add(acc(d, d), c);
    }
    return acc;
}

namespace {

int matrix_rank(Mat m)
{
    const Field& F = m.field();
    const int n = m.dim();
    int rank = 0;
    for (int c = 0; c < n && rank < n; ++c) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(rank, j));
        const Fel inv = F.inv(m(rank, c));
        for (int r = rank + 1; r < n; ++r) {
            if (m(r, c) == 0) continue;
            const Fel factor = F.mul(m(r, c), inv);
            for (int j = c; j < n; ++j) m(r, j) = F.sub(m(r, j), F.mul(factor, m(rank, j)));
        }
        ++rank;
    }
    return rank;
}

// det(xI - g) by permutation expansion; n <= 4 keeps this tiny.
Poly char_poly(const Mat& g)
{
    const Field& F = g.field();
    const int n = g.dim();
    if (n > 4) throw Error("char_poly: dimension > 4");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Poly acc(F);
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Poly term = Poly::constant(F, (inversions % 2 == 0) ? F.one() : F.neg(F.one()));
        for (int i = 0; i < n; ++i) {
            const Fel gij = g(i, perm[i]);
            if (perm[i] == i)
                term = term * Poly(F, {F.neg(gij), F.one()});  // x - g_ii
            else
                term = term * Poly::constant(F, F.neg(gij));
        }
        acc = acc + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

std::vector<int> partition_from_ranks(const Mat& g, const Poly& f, int mult)
{
    const int n = g.dim();
    const int d = f.degree();
    const Mat B = poly_at_matrix(f, g);
    std::vector<int> block_counts;  // c_k = number of blocks of size >= k
    Mat Bk = B;
    int prev_kernel = 0;
    for (int k = 1; k <= mult; ++k) {
        const int kernel = n - matrix_rank(Bk);
        const int ck = (kernel - prev_kernel) / d;
        if (ck == 0) break;
        block_counts.push_back(ck);
        prev_kernel = kernel;
        if (kernel == mult * d) break;
        Bk = Bk * B;
    }
    std::vector<int> lambda;
    for (int j = 1; j <= (block_counts.empty() ? 0 : block_counts[0]); ++j) {
        int lj = 0;
        for (std::size_t k = 0; k < block_counts.size(); ++k)
            if (block_counts[k] >= j) lj = static_cast<int>(k) + 1;
        lambda.push_back(lj);
    }
    int total = 0;
    for (int part : lambda) total += part;
    if (total != mult) throw InternalCheckError("partition does not match multiplicity");
    return lambda;
}

Mat companion(const Poly& h)
{
    const Field& F = h.field();
    const int k = h.degree();
    Mat c(F, k);
    for (int i = 0; i + 1 < k; ++i) c(i + 1, i) = F.one();
    for (int i = 0; i < k; ++i) c(i, k - 1) = F.neg(h.coeff(i));
    return c;
}

std::uint64_t centralizer_factor(std::uint64_t Q, const std::vector<int>& lambda)
{
    // b_lambda(Q) = Q^{sum mu_j^2} prod_k prod_{i<=m_k} (1 - Q^{-i}),
    // computed as an exact integer.
    const int max_part = lambda[0];
    std::vector<int> mu(max_part, 0);  // conjugate partition
    for (int part : lambda)
        for (int j = 0; j < part; ++j) ++mu[j];
    std::int64_t exponent = 0;
    for (int j = 0; j < max_part; ++j) exponent += static_cast<std::int64_t>(mu[j]) * mu[j];
    std::map<int, int> mult_of_size;
    for (int part : lambda) ++mult_of_size[part];
    std::uint64_t prod = 1;
    for (const auto& [size, m] : mult_of_size) {
        (void)size;
        for (int i = 1; i <= m; ++i) {
            exponent -= i;
            std::uint64_t Qi = 1;
            for (int t = 0; t < i; ++t) Qi *= Q;
            prod *= Qi - 1;
        }
    }
    std::uint64_t Qe = 1;
    for (std::int64_t t = 0; t < exponent; ++t) Qe *= Q;
    return Qe * prod;
}

}  // namespace

std::vector<std::vector<int>> partitions_of(int w)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int max_part) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(rest, max_part); part >= 1; --part) {
            cur.push_back(part);
            rec(rest - part, part);
            cur.pop_back();
        }
    };
    rec(w, w);
    return out;
}

ClassLabel class_label(const Mat& g)
{
    ClassLabel label;
    const Poly cp = char_poly(g);
    for (const auto& [f, mult] : factor_poly(cp)) {
        std::vector<int> lambda =
            (mult == 1) ? std::vector<int>{1} : partition_from_ranks(g, f, mult);
        label.parts.emplace_back(f, std::move(lambda));
    }
    std::sort(label.parts.begin(), label.parts.end(), [](const auto& a, const auto& b) {
        if (a.first == b.first) return a.second < b.second;
        return a.first < b.first;
    });
    return label;
}

ClassData::ClassData(const Field& F, int n) : F_(&F), n_(n)
{
    check_envelope(F, n);
    order_ = gl_order(F.q(), n);

    // Enumerate labels: multisets of (irreducible != x, partition) with
    // total degree n.
    std::vector<Poly> items;
    for (int d = 1; d <= n; ++d)
        for (const Poly& f : irreducibles(F, d))
            if (f.coeff(0) != 0) items.push_back(f);

    std::vector<std::pair<Poly, std::vector<int>>> cur;
    std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int budget) {
        if (budget == 0) {
            labels_.push_back(ClassLabel{cur});
            return;
        }
        for (std::size_t i = idx; i < items.size(); ++i) {
            const int d = items[i].degree();
            if (d > budget) continue;
            for (int w = 1; w * d <= budget; ++w)
                for (const auto& lam : partitions_of(w)) {
                    cur.emplace_back(items[i], lam);
                    rec(i + 1, budget - w * d);
                    cur.pop_back();
                }
        }
    };
    rec(0, n);
    for (auto& l : labels_)
        std::sort(l.parts.begin(), l.parts.end(), [](const auto& a, const auto& b) {
            if (a.first == b.first) return a.second < b.second;
            return a.first < b.first;
        });
    std::sort(labels_.begin(), labels_.end());

    for (int i = 0; i < count(); ++i) index_.emplace(labels_[i], i);

    // Representatives: block diagonal of companion matrices of f^part.
    for (const ClassLabel& l : labels_) {
        Mat rep(F, 0);
        bool first = true;
        for (const auto& [f, lam] : l.parts)
            for (int part : lam) {
                const Mat blk = companion(f.pow(part));
                rep = first ? blk : block_diag(rep, blk);
                first = false;
            }
        reps_.push_back(rep);
    }

    // Sizes via the centralizer-order formula; validated below.
    std::uint64_t total = 0;
    for (const ClassLabel& l : labels_) {
        std::uint64_t cent = 1;
        for (const auto& [f, lam] : l.parts) {
            std::uint64_t Q = 1;
            for (int t = 0; t < f.degree(); ++t) Q *= F.q();
            cent *= centralizer_factor(Q, lam);
        }
        sizes_.push_back(order_ / cent);
        if (order_ % cent != 0) throw InternalCheckError("centralizer order does not divide |G|");
        total += order_ / cent;
    }
    if (total != order_) throw InternalCheckError("class sizes do not sum to |G|");

    identity_class_ = index_of_label(class_label(Mat::identity(F, n)));

    pack_space_ = 1;
    bool fits = true;
    for (int i = 0; i < n * n && fits; ++i) {
        pack_space_ *= F.q();
        if (pack_space_ > 8'000'000) fits = false;
    }
    if (fits) dense_memo_.assign(pack_space_, -1);

    element_order_.resize(count());
    inverse_class_.resize(count());
    for (int i = 0; i < count(); ++i) {
        const Mat& r = reps_[i];
        Mat p = r;
        std::uint64_t ord = 1;
        while (!p.is_identity()) {
            p = p * r;
            ++ord;
            if (ord > order_) throw InternalCheckError("element order exceeds |G|");
        }
        element_order_[i] = ord;
        inverse_class_[i] = index_of(r.pow(ord - 1));
    }
}

int ClassData::index_of_label(const ClassLabel& l) const
{
    auto it = index_.find(l);
    if (it == index_.end()) throw InternalCheckError("unknown class label " + l.to_string());
    return it->second;
}

int ClassData::index_of(const Mat& g) const
{
    if (!dense_memo_.empty()) {
        const std::uint64_t key = g.pack();
        std::atomic_ref<std::int32_t> slot(const_cast<std::int32_t&>(dense_memo_[key]));
        const std::int32_t cached = slot.load(std::memory_order_relaxed);
        if (cached >= 0) return cached;
        const int idx = index_of_label(class_label(g));
        slot.store(idx, std::memory_order_relaxed);
        return idx;
    }
    return index_of_label(class_label(g));
}

int ClassData::power_class(int i, std::uint64_t k) const
{
    return index_of(reps_[i].pow(k % element_order_[i]));
}

std::uint64_t ClassData::exponent() const
{
    std::uint64_t e = 1;
    for (std::uint64_t o : element_order_) e = std::lcm(e, o);
    return e;
}

const ClassData& ClassData::get(const Field& F, int n)
{
    static std::mutex mu;
    static std::map<std::pair<const Field*, int>, std::unique_ptr<ClassData>> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(&F, n);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<ClassData>(new ClassData(F, n))).first;
    return *it->second;
}

}  // namespace glq

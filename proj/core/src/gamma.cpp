#include "glq/gamma.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "glq/errors.hpp"

namespace glq {

namespace {

double qpow(std::uint64_t q, std::int64_t e2)
{
    // q^{e2/2}
    return std::pow(static_cast<double>(q), static_cast<double>(e2) / 2.0);
}

/// (0, I_{top}; x, 0) in GL_N with x of size N - top in the bottom-left.
Mat corner_matrix(const Field& F, int N, const Mat& x)
{
    const int k = x.dim();
    Mat m(F, N);
    for (int i = 0; i + k < N; ++i) m(i, k + i) = F.one();
    m.set_block(N - k, 0, x);
    return m;
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct ResidualTracker {
    double max_res = 0.0;
    std::uint64_t instances = 0;
    std::string worst;

    void add(double r, const std::string& what)
    {
        ++instances;
        if (r > max_res) {
            max_res = r;
            worst = what;
        }
    }
};

VerdictReport finish(const std::string& id, const std::string& scope, const ResidualTracker& t,
                     double tol, const Stopwatch& sw)
{
    VerdictReport r;
    r.theorem_id = id;
    r.scope = scope;
    r.instances = t.instances;
    r.max_residual = t.max_res;
    r.tolerance = tol;
    r.pass = t.max_res < tol;
    r.wall_seconds = sw.seconds();
    r.worst_instance = t.worst;
    return r;
}

void require_generic(IrrepHandle h, const char* who)
{
    if (!h.valid() || !h.table->is_generic(h.row))
        throw NotGenericError(std::string(who) + ": representation is not generic");
}

}  // namespace

std::string to_string(GammaMethod m)
{
    switch (m) {
        case GammaMethod::shahidi_bessel: return "shahidi_bessel";
        case GammaMethod::jpss_bessel: return "jpss_bessel";
        case GammaMethod::intertwining_oracle: return "intertwining_oracle";
        case GammaMethod::kondo_product: return "kondo_product";
    }
    return "?";
}

IrrepHandle contragredient(IrrepHandle pi)
{
    return {pi.table, pi.table->contragredient(pi.row)};
}

std::vector<IrrepHandle> support_handles(IrrepHandle pi)
{
    std::vector<IrrepHandle> out;
    for (const SupportEntry& e : pi.table->cuspidal_support(pi.row))
        out.push_back({&CharacterTable::get(pi.table->field(), e.block_size), e.row});
    return out;
}

int support_multiplicity(IrrepHandle pi, IrrepHandle sigma)
{
    return pi.table->support_multiplicity(pi.row,
                                          SupportEntry{sigma.table->n(), sigma.row});
}

GammaValue shahidi_gamma(IrrepHandle pi, IrrepHandle sigma, Fel psi_a)
{
    require_generic(pi, "shahidi_gamma");
    require_generic(sigma, "shahidi_gamma");
    const Field& F = pi.table->field();
    if (&sigma.table->field() != &F) throw PreconditionError("shahidi_gamma: field mismatch");
    const int n = pi.table->n(), m = sigma.table->n();
    const AdditiveCharacter psi(F, psi_a);
    const BesselEvaluator& Jpi = bessel_evaluator(pi, psi_a);
    const BesselEvaluator& Jsc = bessel_evaluator(contragredient(sigma), F.neg(psi_a));
    const Fel minus_one = F.neg(F.one());

    KahanSum acc;
    double prefactor;
    if (n > m) {
        for (const Mat& x : coset_transversal(F, m))
            acc.add(Jpi.value(corner_matrix(F, n, x)) * Jsc.value(x));
        prefactor = qpow(F.q(), static_cast<std::int64_t>(m) * (2 * n - m - 1));
        const cxd w = sigma.table->central_character(sigma.row, minus_one);
        return {prefactor * w * acc.value(), GammaMethod::shahidi_bessel, F.q(), n, m,
                pi.row, sigma.row, psi_a};
    }
    if (n == m) {
        for (const Mat& x : coset_transversal(F, n)) {
            const Mat xi = x.inverse();
            acc.add(psi(xi(n - 1, 0)) * Jpi.value(x) * Jsc.value(x));
        }
        prefactor = qpow(F.q(), static_cast<std::int64_t>(n) * (n - 1));
        const cxd w = sigma.table->central_character(sigma.row, minus_one);
        return {prefactor * w * acc.value(), GammaMethod::shahidi_bessel, F.q(), n, m,
                pi.row, sigma.row, psi_a};
    }
    for (const Mat& x : coset_transversal(F, n))
        acc.add(Jpi.value(x) * Jsc.value(corner_matrix(F, m, x)));
    prefactor = qpow(F.q(), static_cast<std::int64_t>(n) * (2 * m - n - 1));
    const cxd w = pi.table->central_character(pi.row, minus_one);
    return {prefactor * w * acc.value(), GammaMethod::shahidi_bessel, F.q(), n, m,
            pi.row, sigma.row, psi_a};
}

cxd normalized_of(const GammaValue& g)
{
    return g.value * qpow(g.q, -static_cast<std::int64_t>(g.n) * g.m);
}

GammaValue normalized_gamma(IrrepHandle pi, IrrepHandle sigma, Fel psi_a)
{
    GammaValue g = shahidi_gamma(pi, sigma, psi_a);
    g.value = normalized_of(g);
    return g;
}

GammaValue jpss_gamma(IrrepHandle pi, IrrepHandle sigma, Fel psi_a)
{
    const Field& F = pi.table->field();
    const int n = pi.table->n(), m = sigma.table->n();
    if (!pi.table->is_cuspidal(pi.row))
        throw PreconditionError("jpss_gamma: pi must be cuspidal");
    if (n < m) throw PreconditionError("jpss_gamma: needs n >= m");
    if (n == m && !sigma.table->is_cuspidal(sigma.row))
        throw PreconditionError("jpss_gamma: sigma must be cuspidal when n = m");
    require_generic(sigma, "jpss_gamma");
    const BesselEvaluator& Jpi = bessel_evaluator(pi, psi_a);
    const BesselEvaluator& Jsig = bessel_evaluator(sigma, F.neg(psi_a));
    const AdditiveCharacter psi(F, psi_a);

    KahanSum acc;
    if (n > m) {
        for (const Mat& h : coset_transversal(F, m))
            acc.add(Jpi.value(corner_matrix(F, n, h)) * Jsig.value(h));
    } else {
        for (const Mat& g : coset_transversal(F, n)) {
            const Mat gi = g.inverse();
            acc.add(Jpi.value(g) * Jsig.value(g) * psi(gi(n - 1, 0)));
        }
    }
    return {acc.value(), GammaMethod::jpss_bessel, F.q(), n, m, pi.row, sigma.row, psi_a};
}

GammaValue gamma_intertwining_oracle(IrrepHandle pi, IrrepHandle sigma, Fel psi_a)
{
    require_generic(pi, "gamma_intertwining_oracle");
    require_generic(sigma, "gamma_intertwining_oracle");
    const Field& F = pi.table->field();
    const int n = pi.table->n(), m = sigma.table->n();
    const int N = n + m;
    if (N > Mat::kMaxDim) throw EnvelopeExceededError("oracle: n + m > 8");
    double space = std::pow(static_cast<double>(F.q()), n * m);
    if (space > 1e6) throw EnvelopeExceededError("oracle: q^{nm} > 1e6");

    const AdditiveCharacter psi(F, psi_a);
    const BesselEvaluator& Jpi = bessel_evaluator(pi, psi_a);
    const BesselEvaluator& Jsig = bessel_evaluator(sigma, psi_a);

    KahanSum acc;
    std::uint64_t total = 1;
    for (int i = 0; i < n * m; ++i) total *= F.q();
    for (std::uint64_t key = 0; key < total; ++key) {
        Mat g = Mat::identity(F, N);
        std::uint64_t t = key;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                g(m + i, j) = static_cast<Fel>(t % F.q());
                t /= F.q();
            }
        auto dec = pwu_decompose(g, m, n);
        if (!dec) continue;  // outside the support of the Whittaker vector
        const auto& [p, u] = *dec;
        acc.add(psi_on_U(psi, u) * Jsig.value(p.block(0, 0, m)) * Jpi.value(p.block(m, m, n)));
    }
    return {acc.value(), GammaMethod::intertwining_oracle, F.q(), n, m, pi.row, sigma.row,
            psi_a};
}

GammaValue kondo_gamma_gl1(IrrepHandle pi, const MultChar& chi, Fel psi_a)
{
    require_generic(pi, "kondo_gamma_gl1");
    const Field& F = pi.table->field();
    if (&chi.field() != &F) throw PreconditionError("kondo_gamma_gl1: chi must live on F_q");
    const int n = pi.table->n();
    const AdditiveCharacter psi(F, psi_a);
    const auto support = pi.table->cuspidal_support(pi.row);
    const int r = static_cast<int>(support.size());

    cxd prod{1.0, 0.0};
    for (const SupportEntry& e : support) {
        const CharacterTable& sub = CharacterTable::get(F, e.block_size);
        const std::int64_t tag = sub.orbit_tag(e.row);
        if (tag < 0) throw OrbitUnidentifiedError("kondo_gamma_gl1: support orbit unidentified");
        const ExtensionField& ext = ext_of(F, e.block_size);
        const MultChar alpha(ext.top(), static_cast<std::uint64_t>(tag));
        prod *= gauss_sum(ext, alpha, chi.inverse(), psi);
    }
    const double sign = ((n + r) % 2 == 0) ? 1.0 : -1.0;
    const Fel sgn_field = (n % 2 == 0) ? F.one() : F.neg(F.one());
    const cxd chi_sign = chi(sgn_field);
    const int m = 1;
    return {sign * chi_sign * prod, GammaMethod::kondo_product, F.q(), n, m, pi.row,
            static_cast<int>(chi.index()), psi_a};
}

cxd two_block_special_value(IrrepHandle pi, Fel c, Fel psi_a)
{
    require_generic(pi, "two_block_special_value");
    const Field& F = pi.table->field();
    const int n = pi.table->n();
    if (n < 2) throw PreconditionError("two_block_special_value: needs n > 1");
    const AdditiveCharacter psi(F, psi_a);
    const auto support = pi.table->cuspidal_support(pi.row);
    const int r = static_cast<int>(support.size());

    std::vector<const ExtensionField*> exts;
    std::vector<MultChar> alphas;
    for (const SupportEntry& e : support) {
        const CharacterTable& sub = CharacterTable::get(F, e.block_size);
        const std::int64_t tag = sub.orbit_tag(e.row);
        if (tag < 0) throw OrbitUnidentifiedError("two_block_special_value: orbit unidentified");
        exts.push_back(&ext_of(F, e.block_size));
        alphas.push_back(MultChar(exts.back()->top(), static_cast<std::uint64_t>(tag)).inverse());
    }

    // target norm product: (-1)^{n-1} c^{-1}
    Fel target = F.inv(c);
    if (n % 2 == 0) target = F.neg(target);

    KahanSum acc;
    std::function<void(int, Fel, cxd)> rec = [&](int j, Fel norm_acc, cxd val_acc) {
        if (j == r) {
            if (norm_acc == target) acc.add(val_acc);
            return;
        }
        const ExtensionField& ext = *exts[j];
        for (Fel xi = 1; xi < ext.top().q(); ++xi)
            rec(j + 1, F.mul(norm_acc, ext.norm(xi)),
                val_acc * alphas[j](xi) * psi(ext.trace(xi)));
    };
    rec(0, F.one(), cxd{1.0, 0.0});

    const double sign = ((n + r) % 2 == 0) ? 1.0 : -1.0;
    return sign * qpow(F.q(), -2 * static_cast<std::int64_t>(n - 1)) * acc.value();
}

cxd three_block_special_value(IrrepHandle pi, Fel c, Fel cprime, Fel psi_a)
{
    require_generic(pi, "three_block_special_value");
    const Field& F = pi.table->field();
    const int n = pi.table->n();
    if (n < 3) throw PreconditionError("three_block_special_value: needs n >= 3");
    const AdditiveCharacter psi(F, psi_a);
    const BesselEvaluator& ev = bessel_evaluator(pi, psi_a);

    KahanSum acc;
    for (Fel s = 1; s < F.q(); ++s) {
        const cxd left = ev.value(two_block_matrix(F, n, F.mul(F.inv(s), c)));
        const cxd right = ev.value(two_block_matrix_flipped(F, n, F.mul(s, cprime)));
        acc.add(left * right * (psi(s) - cxd{1.0, 0.0}));
    }
    cxd total = acc.value();
    if (F.mul(c, cprime) == F.one())
        total += qpow(F.q(), -2 * static_cast<std::int64_t>(n - 2));
    return total;
}

VerdictReport fourier_bessel_identity_check(IrrepHandle pi, Fel c, Fel psi_a)
{
    require_generic(pi, "fourier_bessel_identity_check");
    const Field& F = pi.table->field();
    const int n = pi.table->n();
    if (n < 2) throw PreconditionError("fourier_bessel_identity_check: needs n >= 2");
    const AdditiveCharacter psi(F, psi_a);
    const BesselEvaluator& ev = bessel_evaluator(pi, psi_a);
    const Mat B = two_block_matrix(F, n, c);
    const cxd jb = ev.value(B);

    Stopwatch sw;
    ResidualTracker tr;
    const std::uint64_t order = pi.table->group_order();
    GroupEnum en(F, n);
    const bool exhaustive = order <= 10000;
    const std::uint64_t stride = exhaustive ? 1 : std::max<std::uint64_t>(1, en.space() / 211);

    std::uint64_t xcount = 1;
    for (int i = 0; i + 1 < n; ++i) xcount *= F.q();

    for (std::uint64_t lo = 0; lo < en.space(); lo += stride) {
        en.for_each_range(lo, lo + 1, [&](const Mat& g) {
            const cxd lhs = ev.value(g) * jb;
            KahanSum rhs;
            for (std::uint64_t key = 0; key < xcount; ++key) {
                Mat T = Mat::identity(F, n);
                std::uint64_t t = key;
                Fel last = 0;
                for (int i = 0; i + 1 < n; ++i) {
                    const Fel xi = static_cast<Fel>(t % F.q());
                    T(i, n - 1) = xi;
                    t /= F.q();
                    if (i == n - 2) last = xi;
                }
                rhs.add(psi(F.neg(last)) * ev.value(g * T * B));
            }
            const cxd rv = rhs.value() * qpow(F.q(), -2 * static_cast<std::int64_t>(n - 1));
            tr.add(std::abs(lhs - rv), "g=" + g.to_string());
        });
    }
    std::ostringstream scope;
    scope << "q=" << F.q() << " n=" << n << " c=" << c << (exhaustive ? " exhaustive" : " sampled");
    return finish("prop.fourier_bessel", scope.str(), tr, kIdentityTol, sw);
}

std::vector<Mat> spanning_translates(const BesselEvaluator& ev)
{
    const Field& F = ev.table().field();
    const int n = ev.table().n();
    const std::size_t dim = static_cast<std::size_t>(ev.table().dim(ev.row()));
    const std::vector<Mat>& reps = coset_transversal(F, n);

    std::vector<Mat> chosen;
    std::vector<std::vector<cxd>> basis;  // row-echelon over C
    std::vector<int> pivots;

    GroupEnum en(F, n);
    en.for_each([&](const Mat& x) {
        if (chosen.size() >= dim) return;
        std::vector<cxd> vec;
        vec.reserve(reps.size());
        for (const Mat& h : reps) vec.push_back(ev.value(h * x));
        // reduce against current basis
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const cxd f = vec[pivots[b]] / basis[b][pivots[b]];
            if (std::abs(f) == 0.0) continue;
            for (std::size_t i = 0; i < vec.size(); ++i) vec[i] -= f * basis[b][i];
        }
        int piv = -1;
        double best = 1e-7;
        for (std::size_t i = 0; i < vec.size(); ++i)
            if (std::abs(vec[i]) > best) {
                best = std::abs(vec[i]);
                piv = static_cast<int>(i);
            }
        if (piv < 0) return;
        basis.push_back(std::move(vec));
        pivots.push_back(piv);
        chosen.push_back(x);
    });
    if (chosen.size() != dim)
        throw InternalCheckError("Bessel translates did not span the Whittaker model");
    return chosen;
}

cxd zj_sum(const std::function<cxd(const Mat&)>& W, const std::function<cxd(const Mat&)>& Wp,
           const Field& F, int n, int m, int j)
{
    const int k = n - m - j - 1;
    if (k < 0) throw PreconditionError("zj_sum: need 0 <= j <= n-m-1");
    KahanSum acc;
    std::uint64_t xspace = 1;
    for (int i = 0; i < k * m; ++i) xspace *= F.q();
    for (const Mat& h : coset_transversal(F, m)) {
        const cxd wp = Wp(h);
        if (std::abs(wp) < 1e-14) continue;
        for (std::uint64_t key = 0; key < xspace; ++key) {
            Mat g(F, n);
            g.set_block(0, 0, h);
            std::uint64_t t = key;
            for (int r = 0; r < k; ++r)
                for (int cc = 0; cc < m; ++cc) {
                    g(m + r, cc) = static_cast<Fel>(t % F.q());
                    t /= F.q();
                }
            for (int r = 0; r < k; ++r) g(m + r, m + r) = F.one();
            for (int r = 0; r < j + 1; ++r) g(m + k + r, m + k + r) = F.one();
            acc.add(W(g) * wp);
        }
    }
    return acc.value();
}

VerdictReport check_fe_n_gt_m(IrrepHandle pi, IrrepHandle sigma, Fel psi_a)
{
    const Field& F = pi.table->field();
    const int n = pi.table->n(), m = sigma.table->n();
    if (n <= m) throw PreconditionError("check_fe_n_gt_m: needs n > m");
    if (!pi.table->is_cuspidal(pi.row))
        throw PreconditionError("check_fe_n_gt_m: pi must be cuspidal");
    require_generic(sigma, "check_fe_n_gt_m");

    Stopwatch sw;
    const cxd gamma = jpss_gamma(pi, sigma, psi_a).value;
    const BesselEvaluator& Jpi = bessel_evaluator(pi, psi_a);
    const BesselEvaluator& Jsig = bessel_evaluator(sigma, F.neg(psi_a));
    const auto X = spanning_translates(Jpi);
    const auto Y = spanning_translates(Jsig);

    Mat D = Mat::identity(F, n);
    D.set_block(m, m, weyl_long(F, n - m));
    const Mat wn = weyl_long(F, n);
    const Mat wm = weyl_long(F, m);

    ResidualTracker tr;
    for (const Mat& x : X)
        for (const Mat& y : Y) {
            auto W = [&](const Mat& g) { return Jpi.value(g * x); };
            auto Wp = [&](const Mat& h) { return Jsig.value(h * y); };
            // rho(D) W-tilde and W'-tilde live in the psi^{-1} models
            auto Wt = [&](const Mat& g) {
                return Jpi.value(wn * (g * D).dual_involution() * x);
            };
            auto Wpt = [&](const Mat& h) { return Jsig.value(wm * h.dual_involution() * y); };
            for (int j = 0; j <= n - m - 1; ++j) {
                const cxd lhs = qpow(F.q(), 2 * static_cast<std::int64_t>(m) * j) * gamma *
                                zj_sum(W, Wp, F, n, m, j);
                const cxd rhs = zj_sum(Wt, Wpt, F, n, m, n - m - j - 1);
                std::ostringstream what;
                what << "x=" << x.to_string() << " y=" << y.to_string() << " j=" << j;
                tr.add(std::abs(lhs - rhs), what.str());
            }
        }
    std::ostringstream scope;
    scope << "q=" << F.q() << " (n,m)=(" << n << "," << m << ") pi=" << pi.row
          << " sigma=" << sigma.row << " a=" << psi_a;
    return finish("thm.fe_n_gt_m", scope.str(), tr, kIdentityTol, sw);
}

SchwartzFunction::SchwartzFunction(const Field& F, int n) : F_(&F), n_(n)
{
    std::uint64_t size = 1;
    for (int i = 0; i < n; ++i) size *= F.q();
    table_.assign(size, cxd{0.0, 0.0});
}

SchwartzFunction SchwartzFunction::delta(const Field& F, int n, std::uint64_t point)
{
    SchwartzFunction phi(F, n);
    phi.table_[point] = 1.0;
    return phi;
}

std::uint64_t SchwartzFunction::pack(const Field& F, const std::vector<Fel>& v)
{
    std::uint64_t idx = 0;
    for (std::size_t i = v.size(); i-- > 0;) idx = idx * F.q() + v[i];
    return idx;
}

std::vector<Fel> SchwartzFunction::unpack(std::uint64_t idx) const
{
    std::vector<Fel> v(n_);
    for (int i = 0; i < n_; ++i) {
        v[i] = static_cast<Fel>(idx % F_->q());
        idx /= F_->q();
    }
    return v;
}

SchwartzFunction fourier_transform(const SchwartzFunction& phi, const AdditiveCharacter& psi)
{
    const Field& F = phi.field();
    const int n = phi.n();
    SchwartzFunction out(F, n);
    for (std::uint64_t yi = 0; yi < out.size(); ++yi) {
        const auto y = phi.unpack(yi);
        KahanSum acc;
        for (std::uint64_t xi = 0; xi < phi.size(); ++xi) {
            if (std::abs(phi[xi]) == 0.0) continue;
            const auto x = phi.unpack(xi);
            Fel pair = 0;
            for (int i = 0; i < n; ++i) pair = F.add(pair, F.mul(x[i], y[i]));
            acc.add(phi[xi] * psi(pair));
        }
        out[yi] = acc.value();
    }
    return out;
}

cxd z_sum(const std::function<cxd(const Mat&)>& W, const std::function<cxd(const Mat&)>& Wp,
          const SchwartzFunction& phi, const Field& F, int n)
{
    KahanSum acc;
    for (const Mat& g : coset_transversal(F, n)) {
        std::vector<Fel> last_row(n);
        for (int j = 0; j < n; ++j) last_row[j] = g(n - 1, j);
        const cxd pv = phi[SchwartzFunction::pack(F, last_row)];
        if (std::abs(pv) == 0.0) continue;
        acc.add(W(g) * Wp(g) * pv);
    }
    return acc.value();
}

VerdictReport check_fe_n_eq_m(IrrepHandle pi, IrrepHandle sigma, Fel psi_a)
{
    const Field& F = pi.table->field();
    const int n = pi.table->n();
    if (sigma.table->n() != n) throw PreconditionError("check_fe_n_eq_m: sizes differ");
    if (!pi.table->is_cuspidal(pi.row) || !sigma.table->is_cuspidal(sigma.row))
        throw PreconditionError("check_fe_n_eq_m: both representations must be cuspidal");

    Stopwatch sw;
    const cxd gamma = jpss_gamma(pi, sigma, psi_a).value;
    const BesselEvaluator& Jpi = bessel_evaluator(pi, psi_a);
    const BesselEvaluator& Jsig = bessel_evaluator(sigma, F.neg(psi_a));
    const AdditiveCharacter psi(F, psi_a);
    const AdditiveCharacter psi_inv = psi.inverse();
    const auto X = spanning_translates(Jpi);
    const auto Y = spanning_translates(Jsig);
    const Mat wn = weyl_long(F, n);

    const bool extended = contragredient(sigma).row != pi.row;  // pi != sigma-check

    ResidualTracker tr;

    // Fourier inversion on the full basis.
    std::uint64_t space = 1;
    for (int i = 0; i < n; ++i) space *= F.q();
    for (std::uint64_t v = 0; v < space; ++v) {
        const SchwartzFunction phi = SchwartzFunction::delta(F, n, v);
        const SchwartzFunction f2 = fourier_transform(fourier_transform(phi, psi), psi_inv);
        double res = 0;
        for (std::uint64_t i = 0; i < space; ++i)
            res = std::max(res,
                           std::abs(f2[i] - static_cast<double>(space) * phi[i]));
        tr.add(res, "fourier inversion at delta_" + std::to_string(v));
    }

    for (const Mat& x : X)
        for (const Mat& y : Y) {
            auto W = [&](const Mat& g) { return Jpi.value(g * x); };
            auto Wp = [&](const Mat& g) { return Jsig.value(g * y); };
            auto Wt = [&](const Mat& g) { return Jpi.value(wn * g.dual_involution() * x); };
            auto Wpt = [&](const Mat& g) { return Jsig.value(wn * g.dual_involution() * y); };

            // structural zero at delta_0
            tr.add(std::abs(z_sum(W, Wp, SchwartzFunction::delta(F, n, 0), F, n)),
                   "Z(W,W',delta_0)");

            for (std::uint64_t v = 0; v < space; ++v) {
                if (v == 0 && !extended) continue;
                const SchwartzFunction phi = SchwartzFunction::delta(F, n, v);
                const SchwartzFunction fphi = fourier_transform(phi, psi);
                const cxd lhs = z_sum(Wt, Wpt, fphi, F, n);
                const cxd rhs = gamma * z_sum(W, Wp, phi, F, n);
                std::ostringstream what;
                what << "x=" << x.to_string() << " y=" << y.to_string() << " v=" << v;
                tr.add(std::abs(lhs - rhs), what.str());
            }
        }

    std::ostringstream scope;
    scope << "q=" << F.q() << " n=m=" << n << " pi=" << pi.row << " sigma=" << sigma.row
          << " a=" << psi_a << (extended ? " extended" : "");
    return finish("thm.fe_n_eq_m", scope.str(), tr, kIdentityTol, sw);
}

}  // namespace glq

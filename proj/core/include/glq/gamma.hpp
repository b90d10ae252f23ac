#pragma once

#include <functional>
#include <string>
#include <vector>

#include "glq/bessel.hpp"
#include "glq/chartable.hpp"
#include "glq/extension.hpp"

namespace glq {

enum class GammaMethod { shahidi_bessel, jpss_bessel, intertwining_oracle, kondo_product };

std::string to_string(GammaMethod m);

struct GammaValue {
    cxd value;
    GammaMethod method;
    std::uint64_t q = 0;
    int n = 0, m = 0;
    int pi_row = -1, sigma_row = -1;
    Fel psi_a = 1;
};

/// Shahidi gamma factor via the closed-form Bessel sums (the main path).
/// Both representations must be irreducible generic.
GammaValue shahidi_gamma(IrrepHandle pi, IrrepHandle sigma, Fel psi_a);

/// q^{-nm/2} * shahidi gamma.
GammaValue normalized_gamma(IrrepHandle pi, IrrepHandle sigma, Fel psi_a);
cxd normalized_of(const GammaValue& g);

/// Jacquet--Piatetski-Shapiro--Shalika (Rankin-Selberg) gamma factor.
/// Requires pi cuspidal, n >= m; for n = m, sigma cuspidal as well.
GammaValue jpss_gamma(IrrepHandle pi, IrrepHandle sigma, Fel psi_a);

/// Independent oracle: the intertwining-operator sum over M_{n x m}(F_q),
/// evaluated with the generic p w u support decomposition per term.
/// Guarded by q^{nm} <= 1e6.
GammaValue gamma_intertwining_oracle(IrrepHandle pi, IrrepHandle sigma, Fel psi_a);

/// Kondo's Gauss-sum product for gamma(pi x chi), chi a character of GL_1.
/// Needs the cuspidal support orbits of pi.
GammaValue kondo_gamma_gl1(IrrepHandle pi, const MultChar& chi, Fel psi_a);

/// Exotic-Kloosterman-sum formula for J_pi(0, I_{n-1}; c, 0), n > 1.
cxd two_block_special_value(IrrepHandle pi, Fel c, Fel psi_a = 1);

/// Convolution formula for the three-block value, n >= 3:
/// sum_s J(0,I;s^{-1}c,0) J(0,sc';I,0) (psi(s)-1) + delta_{cc',1}/q^{n-2}.
cxd three_block_special_value(IrrepHandle pi, Fel c, Fel cprime, Fel psi_a = 1);

/// Structured verification result.
struct VerdictReport {
    std::string theorem_id;
    std::string scope;
    std::uint64_t instances = 0;
    double max_residual = 0.0;
    bool pass = false;
    double wall_seconds = 0.0;
    std::string worst_instance;
    double tolerance = 0.0;
};

/// Check of the Fourier-transform identity for the Bessel function at a
/// fixed c, over exhaustive g when |G| <= 1e4 (sampled otherwise).
VerdictReport fourier_bessel_identity_check(IrrepHandle pi, Fel c, Fel psi_a = 1);

/// Whittaker function W(g) = J_{pi,psi}(g x), a right translate of the
/// Bessel function; translates span the Whittaker model.
class WhittakerFunction {
public:
    WhittakerFunction(const BesselEvaluator& ev, const Mat& x) : ev_(&ev), x_(x) {}
    cxd operator()(const Mat& g) const { return ev_->value(g * x_); }
    /// W-tilde in W(pi-check, psi^{-1}): g -> W(w_n (g^{-1})^T).
    cxd tilde(const Mat& g) const { return ev_->value(weyl_long(g.field(), g.dim()) * g.dual_involution() * x_); }
    const Mat& translate() const { return x_; }
    const BesselEvaluator& evaluator() const { return *ev_; }

private:
    const BesselEvaluator* ev_;
    Mat x_;
};

/// Deterministic translates x such that the right translates rho(x) J span
/// the Whittaker model (rank-based early stop at dim pi).
std::vector<Mat> spanning_translates(const BesselEvaluator& ev);

/// Z_j sum of the n > m functional equation; W lives on GL_n, Wp on GL_m.
cxd zj_sum(const std::function<cxd(const Mat&)>& W, const std::function<cxd(const Mat&)>& Wp,
           const Field& F, int n, int m, int j);

/// Functional equation check (Thm 2.10 shape): pi cuspidal on GL_n, sigma
/// generic on GL_m, n > m, over spanning Whittaker pairs and all j.
VerdictReport check_fe_n_gt_m(IrrepHandle pi, IrrepHandle sigma, Fel psi_a);

/// Function table on F_q^n (the Schwartz space S_n).
class SchwartzFunction {
public:
    SchwartzFunction(const Field& F, int n);
    static SchwartzFunction delta(const Field& F, int n, std::uint64_t point);

    const Field& field() const { return *F_; }
    int n() const { return n_; }
    std::uint64_t size() const { return table_.size(); }
    cxd& operator[](std::uint64_t i) { return table_[i]; }
    cxd operator[](std::uint64_t i) const { return table_[i]; }

    /// Pack a coordinate vector into a table index.
    static std::uint64_t pack(const Field& F, const std::vector<Fel>& v);
    std::vector<Fel> unpack(std::uint64_t idx) const;

private:
    const Field* F_;
    int n_;
    std::vector<cxd> table_;
};

/// F_psi phi(y) = sum_x phi(x) psi(<x, y>).
SchwartzFunction fourier_transform(const SchwartzFunction& phi, const AdditiveCharacter& psi);

/// Z(W, W', phi) = sum_{U_n \ GL_n} W(g) W'(g) phi(e_n g).
cxd z_sum(const std::function<cxd(const Mat&)>& W, const std::function<cxd(const Mat&)>& Wp,
          const SchwartzFunction& phi, const Field& F, int n);

/// n = m functional equation check (cuspidal pairs), including the
/// extension to all of S_n when pi is not the contragredient of sigma and
/// the Fourier inversion law.
VerdictReport check_fe_n_eq_m(IrrepHandle pi, IrrepHandle sigma, Fel psi_a);

/// Handles of the cuspidal support of pi, resolved against live tables.
std::vector<IrrepHandle> support_handles(IrrepHandle pi);

/// Contragredient handle within the same table.
IrrepHandle contragredient(IrrepHandle pi);

/// sigma-multiplicity d_pi(sigma) in the cuspidal support.
int support_multiplicity(IrrepHandle pi, IrrepHandle sigma);

}  // namespace glq

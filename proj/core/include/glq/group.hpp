#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "glq/field.hpp"
#include "glq/matrix.hpp"

namespace glq {

/// Exhaustive-summation envelope: refuse groups beyond this size.
inline constexpr std::uint64_t kMaxGroupOrder = 2'000'000;
inline constexpr int kMaxGroupDim = 4;

/// |GL_n(F_q)| = prod_{i<n} (q^n - q^i).
std::uint64_t gl_order(std::uint64_t q, int n);

/// Throws EnvelopeExceededError when (q, n) is outside the envelope.
void check_envelope(const Field& F, int n);

using MatVisitor = std::function<void(const Mat&)>;

/// Deterministic enumeration of GL_n(F_q): all n x n matrices in packed
/// index order, filtered by invertibility.  Restartable and partitionable
/// by index range, so parallel partitioned enumeration yields the same
/// multiset as a single pass.
class GroupEnum {
public:
    GroupEnum(const Field& F, int n);
    /// Size of the ambient index space q^(n^2).
    std::uint64_t space() const { return space_; }
    std::uint64_t order() const { return order_; }
    void for_each(const MatVisitor& fn) const { for_each_range(0, space_, fn); }
    void for_each_range(std::uint64_t lo, std::uint64_t hi, const MatVisitor& fn) const;

private:
    const Field* F_;
    int n_;
    std::uint64_t space_;
    std::uint64_t order_;
};

void for_each_group_element(const Field& F, int n, const MatVisitor& fn);
/// Materialized enumeration, for tests and small transversals.
std::vector<Mat> group_elements(const Field& F, int n);

enum class SubgroupKind {
    upper_unipotent,   // U_n
    unipotent_radical, // N_{n_1,...,n_r}
    parabolic,         // P_{n_1,...,n_r}
    levi,              // L_{n_1,...,n_r}
    mirabolic,         // P_n: last row (0,...,0,1)
    center,            // scalars
};

std::uint64_t subgroup_order(const Field& F, int n, SubgroupKind kind,
                             const std::vector<int>& composition = {});
void for_each_subgroup_element(const Field& F, int n, SubgroupKind kind,
                               const std::vector<int>& composition, const MatVisitor& fn);
std::vector<Mat> subgroup_elements(const Field& F, int n, SubgroupKind kind,
                                   const std::vector<int>& composition = {});

/// psi applied to the sum of the superdiagonal entries of an upper
/// unitriangular matrix.  Throws NotUnipotentError.
cxd psi_on_U(const AdditiveCharacter& psi, const Mat& u);

/// Sum of the superdiagonal entries (the argument fed to psi).
Fel superdiagonal_sum(const Mat& u);

/// Canonical representative of the left coset U_n g, computed by clearing
/// each column above its lowest pivot with row operations from U_n.
Mat coset_canonical(const Mat& g);

/// Transversal of U_n \ GL_n(F_q) in deterministic order.
std::vector<Mat> coset_reps_U(const Field& F, int n);
/// Shared cached transversal (immutable after first use).
const std::vector<Mat>& coset_transversal(const Field& F, int n);
void for_each_coset_rep(const Field& F, int n, const MatVisitor& fn);

/// Bruhat-type normal form for the double coset U_n g U_n: a monomial
/// matrix plus the two psi arguments, such that
///   J(g) = psi(psi_left) psi(psi_right) J(monomial)
/// for every two-sided psi-equivariant J.
struct DoubleCosetForm {
    Mat monomial;
    Fel psi_left;
    Fel psi_right;
};
DoubleCosetForm double_coset_canonical(const Mat& g);

/// Factor g in GL_{n+m} as p w_{n,m} u with p in P_{m,n} and u in U_{n+m}.
/// Returns nothing iff g is not in the double coset P_{m,n} w_{n,m} U_{n+m}
/// (equivalently, iff the bottom-left n x n minor of g is singular).
std::optional<std::pair<Mat, Mat>> pwu_decompose(const Mat& g, int m, int n);

}  // namespace glq

#pragma once

#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "glq/chartable.hpp"
#include "glq/group.hpp"

namespace glq {

/// Memoized evaluator of the normalized Bessel function J_{pi,psi} of an
/// irreducible generic representation:
///   J(g) = (1/|U_n|) sum_{u in U_n} psi^{-1}(u) chi_pi(g u).
/// Values are cached on U\G/U double cosets via the monomial normal form;
/// the psi twists are reapplied per element.
class BesselEvaluator {
public:
    /// Throws NotGenericError when the row is not generic.
    BesselEvaluator(const CharacterTable& table, int row, Fel psi_twist);

    const CharacterTable& table() const { return *table_; }
    int row() const { return row_; }
    AdditiveCharacter psi() const { return {table_->field(), twist_}; }

    cxd value(const Mat& g) const;
    /// W-tilde path: J evaluated at w_n (g^{-1})^T.
    cxd value_tilde(const Mat& g) const;

private:
    cxd monomial_value(const Mat& m) const;

    const CharacterTable* table_;
    int row_;
    Fel twist_;
    Mat w_long_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, cxd> memo_;
};

/// Shared evaluators, cached per (table, row, twist).
const BesselEvaluator& bessel_evaluator(const CharacterTable& table, int row, Fel psi_twist);
inline const BesselEvaluator& bessel_evaluator(IrrepHandle pi, Fel psi_twist)
{
    return bessel_evaluator(*pi.table, pi.row, psi_twist);
}

/// bessel_value(pi, psi_a, g).
cxd bessel_value(IrrepHandle pi, Fel psi_twist, const Mat& g);

/// The two-block matrix (0, I_{n-1}; c, 0).
Mat two_block_matrix(const Field& F, int n, Fel c);
/// The mirrored two-block matrix (0, c; I_{n-1}, 0).
Mat two_block_matrix_flipped(const Field& F, int n, Fel c);
/// The three-block matrix (0, 0, -c'; 0, I_{n-2}, 0; c, 0, 0).
Mat three_block_matrix(const Field& F, int n, Fel c, Fel cprime);

struct BesselTableRow {
    Mat element;
    Mat canonical_key;  // monomial form of the U\G/U double coset
    cxd value;          // |value| < 1e-9 reported as exact 0
};

enum class BesselDomain { two_block, three_block, full };

/// Tabulate Bessel values on a named domain.  The full domain is guarded by
/// |G| <= 1e5.
std::vector<BesselTableRow> bessel_table(IrrepHandle pi, Fel psi_twist, BesselDomain domain);

}  // namespace glq

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "glq/classes.hpp"
#include "glq/extension.hpp"
#include "glq/field.hpp"
#include "glq/numeric.hpp"

namespace glq {

/// One term m * zeta_order^exp of an exact character value.
struct CycloTerm {
    std::uint32_t order;
    std::uint32_t exp;
    std::int64_t coeff;
    bool operator==(const CycloTerm& o) const
    {
        return order == o.order && exp == o.exp && coeff == o.coeff;
    }
    bool operator<(const CycloTerm& o) const
    {
        return std::tie(order, exp, coeff) < std::tie(o.order, o.exp, o.coeff);
    }
};

/// Exact character value: sum of roots of unity with integer coefficients.
/// All terms of one value share the same order (the order of the class
/// representative), exponents increasing, zero coefficients omitted.
using CycloValue = std::vector<CycloTerm>;

cxd lift(const CycloValue& v);

/// Member of a cuspidal support: a cuspidal irrep of GL_{block_size}(F_q).
struct SupportEntry {
    int block_size;
    int row;  // row index in the character table of GL_{block_size}(F_q)
    bool operator==(const SupportEntry& o) const
    {
        return block_size == o.block_size && row == o.row;
    }
    bool operator<(const SupportEntry& o) const
    {
        return std::tie(block_size, row) < std::tie(o.block_size, o.row);
    }
};

class CharacterTable;

/// A reference to one irreducible representation.
struct IrrepHandle {
    const CharacterTable* table = nullptr;
    int row = -1;
    bool valid() const { return table != nullptr && row >= 0; }
    bool operator==(const IrrepHandle& o) const { return table == o.table && row == o.row; }
};

/// Exact character table of GL_n(F_q) with per-irrep classification data.
///
/// Built by the Burnside-Dixon algorithm modulo a prime l = 1 mod exp(G),
/// l > 2 sqrt|G|, then lifted to exact cyclotomic values.  Rows are sorted
/// by (dimension, cyclotomic data) so indices are stable across runs.
class CharacterTable {
public:
    /// Cached per (field, n); uses the cache directory when configured.
    static const CharacterTable& get(const Field& F, int n);

    const Field& field() const { return *F_; }
    int n() const { return n_; }
    const ClassData& classes() const { return *classes_; }
    std::uint64_t group_order() const { return classes_->group_order(); }

    int irrep_count() const { return static_cast<int>(dims_.size()); }
    std::int64_t dim(int row) const { return dims_[row]; }
    const CycloValue& cyclo(int row, int cls) const { return values_[row][cls]; }
    cxd value(int row, int cls) const { return lifts_[row][cls]; }
    cxd value_at(int row, const Mat& g) const { return lifts_[row][classes_->index_of(g)]; }

    /// dim Hom_{U_n}(Res pi, psi) as the average (1/|U|) sum chi(u) conj(psi(u)).
    /// Throws NonIntegralError if the average is not a nonnegative integer.
    std::int64_t whittaker_multiplicity(int row, const AdditiveCharacter& psi) const;
    /// Multiplicity at the default psi_1 (cached).
    std::int64_t whittaker_multiplicity(int row) const { return whit_[row]; }
    bool is_generic(int row) const { return whit_[row] >= 1; }
    bool is_cuspidal(int row) const { return cuspidal_[row]; }

    /// omega_pi(a) = chi(aI)/chi(I).
    cxd central_character(int row, Fel a) const;
    /// Row of the contragredient (matched by exact character values).
    int contragredient(int row) const { return contragredient_[row]; }

    /// Cuspidal support as a sorted multiset of (block size, row) entries.
    const std::vector<SupportEntry>& cuspidal_support(int row) const { return support_[row]; }
    /// Multiplicity of the cuspidal sigma in the support of row.
    int support_multiplicity(int row, const SupportEntry& sigma) const;
    /// The unique generic irrep with the given support.
    int generic_of_support(const std::vector<SupportEntry>& multiset) const;

    /// Frobenius-orbit tag of a cuspidal row (smallest index in the orbit);
    /// -1 for non-cuspidal rows.
    std::int64_t orbit_tag(int row) const { return orbit_tag_[row]; }
    int cuspidal_row_by_orbit(std::uint64_t orbit_rep) const;
    FrobeniusOrbit orbit_of(int row) const;

    std::vector<int> generic_rows() const;
    std::vector<int> cuspidal_rows() const;

    /// Character of Ind_P^G(chi_1 x ... x chi_r) inflated through the
    /// unipotent radical, as a class function (complex values per class).
    /// Throws CompositionMismatchError on shape mismatch.
    std::vector<cxd> induce_from_levi(const std::vector<int>& composition,
                                      const std::vector<IrrepHandle>& factors) const;

    /// <f, chi_row> for a class function f; must be a nonnegative integer.
    std::int64_t inner_with_row(const std::vector<cxd>& f, int row) const;
    /// Inner product of two class functions.
    cxd inner(const std::vector<cxd>& f, const std::vector<cxd>& g) const;

    /// Dixon working-prime metadata (exposed for tests and reports).
    std::uint64_t dixon_prime() const { return ell_; }
    std::uint64_t group_exponent() const { return exponent_; }

    /// Rebuild from cached payload; used by the cache module.
    struct Raw {
        std::vector<std::int64_t> dims;
        std::vector<std::vector<CycloValue>> values;
        std::vector<std::int64_t> whit;
        std::vector<char> cuspidal;
        std::vector<int> contragredient;
        std::vector<std::vector<SupportEntry>> support;
        std::vector<std::int64_t> orbit_tag;
        std::uint64_t ell = 0;
        std::uint64_t exponent = 0;
    };
    Raw raw() const;
    static std::unique_ptr<CharacterTable> from_raw(const Field& F, int n, Raw raw);

    ~CharacterTable();

private:
    CharacterTable(const Field& F, int n);
    CharacterTable(const Field& F, int n, Raw raw);

    void build_dixon();
    void build_direct_gl1();
    void compute_lifts();
    void compute_metadata();
    void sort_rows();

    struct InductionData;
    const InductionData& induction_data(const std::vector<int>& composition) const;

    const Field* F_;
    int n_;
    const ClassData* classes_;

    std::vector<std::int64_t> dims_;
    std::vector<std::vector<CycloValue>> values_;  // [row][class]
    std::vector<std::vector<cxd>> lifts_;
    std::uint64_t ell_ = 0;
    std::uint64_t exponent_ = 0;

    std::vector<std::int64_t> whit_;
    std::vector<char> cuspidal_;
    std::vector<int> contragredient_;
    std::vector<std::vector<SupportEntry>> support_;
    std::vector<std::int64_t> orbit_tag_;

    mutable std::mutex induction_mu_;
    mutable std::map<std::vector<int>, std::unique_ptr<InductionData>> induction_;
};

/// Resolve q = p^f (throws UsageError if q is not a prime power) and return
/// the table, honoring the configured cache directory.
const CharacterTable& character_table(std::uint64_t q, int n);

/// Field for a prime-power cardinality.
const Field& field_of_order(std::uint64_t q);

/// Directory used to persist character tables ("" disables persistence).
/// Initialized from the GLQ_CACHE_DIR environment variable.
void set_cache_dir(const std::string& dir);
std::string cache_dir();

inline IrrepHandle irrep(const CharacterTable& t, int row) { return {&t, row}; }

}  // namespace glq

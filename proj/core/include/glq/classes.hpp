#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "glq/group.hpp"
#include "glq/matrix.hpp"
#include "glq/poly.hpp"

namespace glq {

/// Conjugacy-class invariant of g in GL_n(F_q): the multiset of elementary
/// divisors, recorded as pairs (irreducible monic polynomial, partition).
/// Pairs are sorted by the polynomial order, partitions decreasing.
struct ClassLabel {
    std::vector<std::pair<Poly, std::vector<int>>> parts;

    bool operator==(const ClassLabel& o) const { return parts == o.parts; }
    bool operator<(const ClassLabel& o) const;
    std::size_t hash() const;
    std::string to_string() const;
};

struct ClassLabelHash {
    std::size_t operator()(const ClassLabel& l) const { return l.hash(); }
};

/// Evaluate a polynomial at a matrix argument.
Mat poly_at_matrix(const Poly& f, const Mat& g);

/// Rational-canonical-form class label; invariant under conjugation.
ClassLabel class_label(const Mat& g);

/// Conjugacy classes of GL_n(F_q): labels, representatives, sizes (from the
/// centralizer-order formula, validated by sum = |G|), inverse classes and
/// power maps.  Classes are sorted by label.
class ClassData {
public:
    static const ClassData& get(const Field& F, int n);

    const Field& field() const { return *F_; }
    int n() const { return n_; }
    int count() const { return static_cast<int>(labels_.size()); }
    std::uint64_t group_order() const { return order_; }

    const ClassLabel& label(int i) const { return labels_[i]; }
    const Mat& representative(int i) const { return reps_[i]; }
    std::uint64_t size(int i) const { return sizes_[i]; }
    std::uint64_t centralizer_order(int i) const { return order_ / sizes_[i]; }

    int identity_class() const { return identity_class_; }
    int index_of_label(const ClassLabel& l) const;
    /// Class index of an arbitrary group element (label + memo lookup).
    int index_of(const Mat& g) const;

    int inverse_class(int i) const { return inverse_class_[i]; }
    /// Multiplicative order of the class (= order of any member).
    std::uint64_t element_order(int i) const { return element_order_[i]; }
    /// Class of rep^k.
    int power_class(int i, std::uint64_t k) const;

    /// lcm of the element orders = exponent of the group.
    std::uint64_t exponent() const;

private:
    ClassData(const Field& F, int n);

    const Field* F_;
    int n_;
    std::uint64_t order_;
    std::vector<ClassLabel> labels_;
    std::vector<Mat> reps_;
    std::vector<std::uint64_t> sizes_;
    std::vector<int> inverse_class_;
    std::vector<std::uint64_t> element_order_;
    int identity_class_;
    std::unordered_map<ClassLabel, int, ClassLabelHash> index_;
    mutable std::vector<std::int32_t> dense_memo_;  // packed matrix -> class
    std::uint64_t pack_space_;
};

/// All partitions of w, parts decreasing, enumerated deterministically.
std::vector<std::vector<int>> partitions_of(int w);

}  // namespace glq

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "glq/field.hpp"

namespace glq {

/// Square matrix over F_q, dimension <= 8, inline storage, value semantics.
class Mat {
public:
    static constexpr int kMaxDim = 8;

    Mat() : F_(nullptr), n_(0) { a_.fill(0); }
    Mat(const Field& F, int n);

    static Mat identity(const Field& F, int n);
    static Mat zero(const Field& F, int n) { return Mat(F, n); }
    /// Scalar matrix a * I_n.
    static Mat scalar(const Field& F, int n, Fel a);

    const Field& field() const { return *F_; }
    int dim() const { return n_; }

    Fel operator()(int i, int j) const { return a_[i * n_ + j]; }
    Fel& operator()(int i, int j) { return a_[i * n_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat transpose() const;
    Fel det() const;
    bool invertible() const { return det() != 0; }
    /// Gaussian elimination; throws Error on singular input.
    Mat inverse() const;
    Mat pow(std::uint64_t e) const;

    /// transpose of the inverse (the outer involution g -> (g^-1)^T).
    Mat dual_involution() const { return inverse().transpose(); }

    bool operator==(const Mat& o) const;
    bool is_identity() const;
    /// Upper unitriangular test.
    bool is_upper_unitriangular() const;

    /// Paste o into this at block position (r0, c0).
    void set_block(int r0, int c0, const Mat& o);
    /// Extract the rows x cols block at (r0, c0) as a square matrix
    /// (rows == cols required).
    Mat block(int r0, int c0, int rows) const;

    std::size_t hash() const;
    /// Entries packed into a single index (row-major, base q); valid when
    /// q^(n^2) fits in 64 bits.
    std::uint64_t pack() const;
    static Mat unpack(const Field& F, int n, std::uint64_t key);

    std::string to_string() const;

private:
    const Field* F_;
    int n_;
    std::array<Fel, kMaxDim * kMaxDim> a_;
};

struct MatHash {
    std::size_t operator()(const Mat& m) const { return m.hash(); }
};

/// diag(a, b) as a block-diagonal matrix.
Mat block_diag(const Mat& a, const Mat& b);

/// The long Weyl element w_n (antidiagonal ones).
Mat weyl_long(const Field& F, int n);

/// The block Weyl element w_{n,m} in GL_{n+m}: zero blocks of sizes m x n
/// (top-left) and n x m (bottom-right), I_m top-right, I_n bottom-left.
/// Satisfies diag(g2, g1) w_{n,m} = w_{n,m} diag(g1, g2) for g1 in GL_n,
/// g2 in GL_m.
Mat weyl_block(const Field& F, int n, int m);

}  // namespace glq

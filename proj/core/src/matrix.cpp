#include "glq/matrix.hpp"

#include <sstream>

#include "glq/errors.hpp"

namespace glq {

Mat::Mat(const Field& F, int n) : F_(&F), n_(n)
{
    if (n < 0 || n > kMaxDim) throw Error("matrix dimension out of range");
    a_.fill(0);
}

Mat Mat::identity(const Field& F, int n)
{
    Mat m(F, n);
    for (int i = 0; i < n; ++i) m(i, i) = F.one();
    return m;
}

Mat Mat::scalar(const Field& F, int n, Fel a)
{
    Mat m(F, n);
    for (int i = 0; i < n; ++i) m(i, i) = a;
    return m;
}

Mat Mat::operator*(const Mat& o) const
{
    Mat r(*F_, n_);
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            const Fel v = (*this)(i, k);
            if (v == 0) continue;
            for (int j = 0; j < n_; ++j)
                r(i, j) = F_->add(r(i, j), F_->mul(v, o(k, j)));
        }
    return r;
}

Mat Mat::transpose() const
{
    Mat r(*F_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

Fel Mat::det() const
{
    Mat m = *this;
    Fel d = F_->one();
    for (int c = 0; c < n_; ++c) {
        int piv = -1;
        for (int r = c; r < n_; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n_; ++j) std::swap(m(piv, j), m(c, j));
            d = F_->neg(d);
        }
        d = F_->mul(d, m(c, c));
        const Fel inv = F_->inv(m(c, c));
        for (int r = c + 1; r < n_; ++r) {
            if (m(r, c) == 0) continue;
            const Fel factor = F_->mul(m(r, c), inv);
            for (int j = c; j < n_; ++j)
                m(r, j) = F_->sub(m(r, j), F_->mul(factor, m(c, j)));
        }
    }
    return d;
}

Mat Mat::inverse() const
{
    Mat m = *this;
    Mat inv = identity(*F_, n_);
    for (int c = 0; c < n_; ++c) {
        int piv = -1;
        for (int r = c; r < n_; ++r)
            if (m(r, c) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw Error("matrix not invertible");
        if (piv != c)
            for (int j = 0; j < n_; ++j) {
                std::swap(m(piv, j), m(c, j));
                std::swap(inv(piv, j), inv(c, j));
            }
        const Fel s = F_->inv(m(c, c));
        for (int j = 0; j < n_; ++j) {
            m(c, j) = F_->mul(m(c, j), s);
            inv(c, j) = F_->mul(inv(c, j), s);
        }
        for (int r = 0; r < n_; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const Fel factor = m(r, c);
            for (int j = 0; j < n_; ++j) {
                m(r, j) = F_->sub(m(r, j), F_->mul(factor, m(c, j)));
                inv(r, j) = F_->sub(inv(r, j), F_->mul(factor, inv(c, j)));
            }
        }
    }
    return inv;
}

Mat Mat::pow(std::uint64_t e) const
{
    Mat r = identity(*F_, n_);
    Mat b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

bool Mat::operator==(const Mat& o) const
{
    if (n_ != o.n_ || F_ != o.F_) return false;
    for (int i = 0; i < n_ * n_; ++i)
        if (a_[i] != o.a_[i]) return false;
    return true;
}

bool Mat::is_identity() const
{
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if ((*this)(i, j) != (i == j ? F_->one() : 0)) return false;
    return true;
}

bool Mat::is_upper_unitriangular() const
{
    for (int i = 0; i < n_; ++i) {
        if ((*this)(i, i) != F_->one()) return false;
        for (int j = 0; j < i; ++j)
            if ((*this)(i, j) != 0) return false;
    }
    return true;
}

void Mat::set_block(int r0, int c0, const Mat& o)
{
    for (int i = 0; i < o.dim(); ++i)
        for (int j = 0; j < o.dim(); ++j) (*this)(r0 + i, c0 + j) = o(i, j);
}

Mat Mat::block(int r0, int c0, int rows) const
{
    Mat r(*F_, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
}

std::size_t Mat::hash() const
{
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(n_);
    for (int i = 0; i < n_ * n_; ++i) {
        h ^= a_[i] + 1;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t Mat::pack() const
{
    std::uint64_t v = 0;
    for (int i = n_ * n_; i-- > 0;) v = v * F_->q() + a_[i];
    return v;
}

Mat Mat::unpack(const Field& F, int n, std::uint64_t key)
{
    Mat m(F, n);
    for (int i = 0; i < n * n; ++i) {
        m.a_[i] = static_cast<Fel>(key % F.q());
        key /= F.q();
    }
    return m;
}

std::string Mat::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < n_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < n_; ++j) {
            if (j) os << " ";
            os << (*this)(i, j);
        }
    }
    os << "]";
    return os.str();
}

Mat block_diag(const Mat& a, const Mat& b)
{
    Mat r(a.field(), a.dim() + b.dim());
    r.set_block(0, 0, a);
    r.set_block(a.dim(), a.dim(), b);
    return r;
}

Mat weyl_long(const Field& F, int n)
{
    Mat w(F, n);
    for (int i = 0; i < n; ++i) w(i, n - 1 - i) = F.one();
    return w;
}

Mat weyl_block(const Field& F, int n, int m)
{
    Mat w(F, n + m);
    for (int i = 0; i < m; ++i) w(i, n + i) = F.one();
    for (int i = 0; i < n; ++i) w(m + i, i) = F.one();
    return w;
}

}  // namespace glq

#pragma once
//
// Truncated lattices Z^d ∩ [-N, N]^d with a canonical lexicographic order.
//

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace nctorus {

/// A point of Z^d.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t dim) : entries_(dim, 0) {}
    MultiIndex(std::initializer_list<int> entries) : entries_(entries) {}
    explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {}

    std::size_t dim() const { return entries_.size(); }
    int  operator[](std::size_t j) const { return entries_[j]; }
    int& operator[](std::size_t j) { return entries_[j]; }
    const std::vector<int>& entries() const { return entries_; }

    bool is_zero() const
    {
        for (int v : entries_)
            if (v != 0)
                return false;
        return true;
    }

    MultiIndex operator-() const
    {
        MultiIndex r(*this);
        for (auto& v : r.entries_)
            v = -v;
        return r;
    }

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b)
    {
        check_same_dim(a, b);
        MultiIndex r(a);
        for (std::size_t j = 0; j < r.dim(); ++j)
            r.entries_[j] += b.entries_[j];
        return r;
    }

    friend MultiIndex operator-(const MultiIndex& a, const MultiIndex& b)
    {
        check_same_dim(a, b);
        MultiIndex r(a);
        for (std::size_t j = 0; j < r.dim(); ++j)
            r.entries_[j] -= b.entries_[j];
        return r;
    }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

    std::string str() const
    {
        std::ostringstream os;
        os << '(';
        for (std::size_t j = 0; j < entries_.size(); ++j)
            os << (j ? "," : "") << entries_[j];
        os << ')';
        return os.str();
    }

private:
    static void check_same_dim(const MultiIndex& a, const MultiIndex& b)
    {
        if (a.dim() != b.dim())
            throw ValidationError("multi-index dimension mismatch: " + a.str() + " vs " + b.str());
    }

    std::vector<int> entries_;
};

/// |m|^2 = sum of squared entries.
inline std::int64_t norm_sq(const MultiIndex& m)
{
    std::int64_t s = 0;
    for (int v : m.entries())
        s += std::int64_t(v) * v;
    return s;
}

/// The symmetric box [-N, N]^d. Points are ordered lexicographically on
/// (entries + N), first coordinate most significant.
class LatticeBox {
public:
    LatticeBox(std::size_t dim, int radius) : dim_(dim), radius_(radius)
    {
        if (dim == 0)
            throw ValidationError("lattice box dimension must be >= 1");
        if (radius < 0)
            throw ValidationError("lattice box radius must be >= 0, got " + std::to_string(radius));
        side_ = std::size_t(2 * radius + 1);
        card_ = 1;
        for (std::size_t j = 0; j < dim; ++j)
            card_ *= side_;
    }

    std::size_t dim() const { return dim_; }
    int radius() const { return radius_; }
    std::size_t side() const { return side_; }
    std::size_t cardinality() const { return card_; }

    bool contains(const MultiIndex& m) const
    {
        if (m.dim() != dim_)
            return false;
        for (int v : m.entries())
            if (v < -radius_ || v > radius_)
                return false;
        return true;
    }

    std::size_t linear_index(const MultiIndex& m) const
    {
        if (!contains(m))
            throw RangeError("multi-index " + m.str() + " outside box of dim " + std::to_string(dim_)
                             + ", radius " + std::to_string(radius_));
        std::size_t idx = 0;
        for (int v : m.entries())
            idx = idx * side_ + std::size_t(v + radius_);
        return idx;
    }

    MultiIndex point(std::size_t idx) const
    {
        if (idx >= card_)
            throw RangeError("linear index " + std::to_string(idx) + " >= box cardinality "
                             + std::to_string(card_));
        MultiIndex m(dim_);
        for (std::size_t j = dim_; j-- > 0;) {
            m[j] = int(idx % side_) - radius_;
            idx /= side_;
        }
        return m;
    }

    std::vector<MultiIndex> enumerate() const
    {
        std::vector<MultiIndex> pts;
        pts.reserve(card_);
        for (std::size_t i = 0; i < card_; ++i)
            pts.push_back(point(i));
        return pts;
    }

    friend bool operator==(const LatticeBox& a, const LatticeBox& b)
    {
        return a.dim_ == b.dim_ && a.radius_ == b.radius_;
    }

private:
    std::size_t dim_;
    int radius_;
    std::size_t side_;
    std::size_t card_;
};

inline std::vector<MultiIndex> enumerate(const LatticeBox& box) { return box.enumerate(); }

inline std::size_t linear_index(const LatticeBox& box, const MultiIndex& m) { return box.linear_index(m); }

} // namespace nctorus

#pragma once

// Two exact numeric kernels for orientation queries over an indexed point array:
// SmallPlane (coordinates within +-2^61, 128-bit products) and BigPlane (GMP).

#include "kncr/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace kncr::detail {

inline bool fits_small(const Integer& v) {
    return mpz_sizeinbase(v.get_mpz_t(), 2) <= 61;
}

inline bool fits_small(std::span<const Point> pts) {
    for (const auto& p : pts)
        if (!fits_small(p.x) || !fits_small(p.y)) return false;
    return true;
}

inline int sign128(__int128 v) { return (v > 0) - (v < 0); }

class SmallPlane {
public:
    explicit SmallPlane(std::span<const Point> pts, std::size_t extra = 0)
        : x_(pts.size() + extra), y_(pts.size() + extra) {
        for (std::size_t i = 0; i < pts.size(); ++i) set(i, pts[i]);
    }

    void set(std::size_t i, const Point& p) {
        x_[i] = p.x.get_si();
        y_[i] = p.y.get_si();
    }

    int orient(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
        const __int128 bx = x_[b] - x_[a], by = y_[b] - y_[a];
        const __int128 cx = x_[c] - x_[a], cy = y_[c] - y_[a];
        return sign128(bx * cy - by * cx);
    }

    class View {
    public:
        View(const SmallPlane& plane, std::uint32_t center) : plane_(&plane), center_(center) {}
        void recenter(std::uint32_t center) { center_ = center; }
        int operator()(std::uint32_t b, std::uint32_t c) const { return plane_->orient(center_, b, c); }

    private:
        const SmallPlane* plane_;
        std::uint32_t center_;
    };

private:
    std::vector<std::int64_t> x_, y_;
};

class BigPlane {
public:
    explicit BigPlane(std::span<const Point> pts, std::size_t extra = 0)
        : x_(pts.size() + extra), y_(pts.size() + extra) {
        for (std::size_t i = 0; i < pts.size(); ++i) set(i, pts[i]);
    }

    void set(std::size_t i, const Point& p) {
        x_[i] = p.x;
        y_[i] = p.y;
    }

    int orient(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
        thread_local mpz_class bx, by, cx, cy;
        mpz_sub(bx.get_mpz_t(), x_[b].get_mpz_t(), x_[a].get_mpz_t());
        mpz_sub(by.get_mpz_t(), y_[b].get_mpz_t(), y_[a].get_mpz_t());
        mpz_sub(cx.get_mpz_t(), x_[c].get_mpz_t(), x_[a].get_mpz_t());
        mpz_sub(cy.get_mpz_t(), y_[c].get_mpz_t(), y_[a].get_mpz_t());
        mpz_mul(bx.get_mpz_t(), bx.get_mpz_t(), cy.get_mpz_t());
        mpz_mul(by.get_mpz_t(), by.get_mpz_t(), cx.get_mpz_t());
        const int r = mpz_cmp(bx.get_mpz_t(), by.get_mpz_t());
        return (r > 0) - (r < 0);
    }

    /// Differences to the center are cached, so a sort costs two products per comparison.
    class View {
    public:
        View(const BigPlane& plane, std::uint32_t center)
            : plane_(&plane), dx_(plane.x_.size()), dy_(plane.y_.size()) {
            recenter(center);
        }
        void recenter(std::uint32_t center) {
            for (std::size_t i = 0; i < dx_.size(); ++i) {
                mpz_sub(dx_[i].get_mpz_t(), plane_->x_[i].get_mpz_t(), plane_->x_[center].get_mpz_t());
                mpz_sub(dy_[i].get_mpz_t(), plane_->y_[i].get_mpz_t(), plane_->y_[center].get_mpz_t());
            }
        }
        int operator()(std::uint32_t b, std::uint32_t c) const {
            mpz_mul(t1_.get_mpz_t(), dx_[b].get_mpz_t(), dy_[c].get_mpz_t());
            mpz_mul(t2_.get_mpz_t(), dy_[b].get_mpz_t(), dx_[c].get_mpz_t());
            const int r = mpz_cmp(t1_.get_mpz_t(), t2_.get_mpz_t());
            return (r > 0) - (r < 0);
        }

    private:
        const BigPlane* plane_;
        std::vector<mpz_class> dx_, dy_;
        mutable mpz_class t1_, t2_;
    };

private:
    std::vector<mpz_class> x_, y_;
};

/// Calls f(plane) with the cheapest kernel that is exact for the given points.
template <class F>
decltype(auto) with_plane(std::span<const Point> pts, std::size_t extra, bool small, F&& f) {
    if (small) {
        SmallPlane plane(pts, extra);
        return f(plane);
    }
    BigPlane plane(pts, extra);
    return f(plane);
}

}  // namespace kncr::detail

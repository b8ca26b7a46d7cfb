#pragma once

// Planar lattice polygons attached to B: P_B, Q_B, their affine images in
// Z^n (Chow polygon, secondary polygon, Newton polygon of D_A), lattice point
// counts, and hull computations for exponent sets of polynomials.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "poly.hpp"

namespace toric {

struct LatticePolygon {
    // Counterclockwise, starting at the lexicographically smallest vertex.
    std::vector<Vec2> vertices;
    // Directed boundary edges in counterclockwise order starting at
    // vertices[0], with the rows of B contributing to each edge (may be empty).
    std::vector<Vec2> edges;
    std::vector<std::vector<std::size_t>> edge_rows;

    bool is_point() const { return vertices.size() <= 1; }
};

// Half-plane then cross-product comparison: angle in [0, 2pi) from the
// positive x-axis.
inline bool angle_less(const Vec2& a, const Vec2& b) {
    auto half = [](const Vec2& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; };
    const int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return det2(a, b) > 0;
}

// Indices of the nonzero rows sorted counterclockwise, ties by index.
inline std::vector<std::size_t> ccw_order(const std::vector<Vec2>& rows) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!is_zero(rows[i])) idx.push_back(i);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return angle_less(rows[i], rows[j]); });
    return idx;
}

namespace detail {

inline bool same_direction(const Vec2& a, const Vec2& b) {
    return det2(a, b) == 0 && a[0] * b[0] + a[1] * b[1] > 0;
}

// Chains edge vectors (already sorted by angle, summing to zero) into a
// polygon; consecutive parallel edges merge.
inline LatticePolygon chain_edges(const std::vector<Vec2>& rows, const std::vector<std::size_t>& order,
                                  const std::vector<std::vector<std::size_t>>& labels) {
    LatticePolygon p;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Vec2& e = rows[order[k]];
        if (!p.edges.empty() && same_direction(p.edges.back(), e)) {
            p.edges.back()[0] += e[0];
            p.edges.back()[1] += e[1];
            p.edge_rows.back().insert(p.edge_rows.back().end(), labels[order[k]].begin(), labels[order[k]].end());
        } else {
            p.edges.push_back(e);
            p.edge_rows.push_back(labels[order[k]]);
        }
    }
    Vec2 sum{0, 0};
    for (const auto& e : p.edges) {
        sum[0] += e[0];
        sum[1] += e[1];
    }
    if (!is_zero(sum)) throw PreconditionError("edge vectors do not close up (nonzero sum)");
    if (p.edges.empty()) {
        p.vertices = {{0, 0}};
        return p;
    }
    std::vector<Vec2> pts{{0, 0}};
    for (std::size_t k = 0; k + 1 < p.edges.size(); ++k)
        pts.push_back({pts.back()[0] + p.edges[k][0], pts.back()[1] + p.edges[k][1]});
    const auto start = static_cast<std::size_t>(std::min_element(pts.begin(), pts.end()) - pts.begin());
    std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(start), pts.end());
    std::rotate(p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(start), p.edges.end());
    std::rotate(p.edge_rows.begin(), p.edge_rows.begin() + static_cast<std::ptrdiff_t>(start), p.edge_rows.end());
    const Vec2 origin = pts.front();
    for (auto& q : pts) q = {q[0] - origin[0], q[1] - origin[1]};
    p.vertices = std::move(pts);
    return p;
}

inline std::vector<std::vector<std::size_t>> singleton_labels(std::size_t n) {
    std::vector<std::vector<std::size_t>> l(n);
    for (std::size_t i = 0; i < n; ++i) l[i] = {i};
    return l;
}

}  // namespace detail

// Polygon whose boundary consists of the given vectors in angular order.
inline LatticePolygon polygon_from_edges(const std::vector<Vec2>& edges) {
    return detail::chain_edges(edges, ccw_order(edges), detail::singleton_labels(edges.size()));
}

inline LatticePolygon build_PB(const BConfig& b) {
    std::size_t independent = 0;
    for (std::size_t i = 0; i < b.size() && independent < 2; ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (det2(b[i], b[j]) != 0) independent = 2;
    if (independent < 2) throw PreconditionError("P_B needs two linearly independent rows");
    return detail::chain_edges(b.rows, ccw_order(b.rows), detail::singleton_labels(b.size()));
}

// Edges: rows off relevant lines plus alpha_v * v per relevant line.
inline LatticePolygon build_QB(const BConfig& b) {
    if (b.has_zero_row()) throw PreconditionError("Q_B requires all rows b_i to be nonzero");
    auto lines = relevant_lines(b);
    std::vector<Vec2> edges;
    std::vector<std::vector<std::size_t>> labels;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!line_of_row(lines, i)) {
            edges.push_back(b[i]);
            labels.push_back({i});
        }
    for (const auto& l : lines)
        if (l.alpha != 0) {
            edges.push_back(l.b_v());
            labels.push_back(l.members);
        }
    return detail::chain_edges(edges, ccw_order(edges), labels);
}

// mu_i = max over P_B of det(b_i, .), in the user's row order.
inline std::vector<std::int64_t> mu_vector(const BConfig& b, const LatticePolygon& p) {
    std::vector<std::int64_t> mu(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (is_zero(b[i])) continue;
        std::int64_t best = det2(b[i], p.vertices.front());
        for (const auto& v : p.vertices) best = std::max(best, det2(b[i], v));
        mu[i] = best;
    }
    return mu;
}
inline std::vector<std::int64_t> mu_vector(const BConfig& b) { return mu_vector(b, build_PB(b)); }

// v -> (mu_i - det(b_i, v))_i
inline std::vector<std::int64_t> chow_coordinates(const BConfig& b, const std::vector<std::int64_t>& mu, const Vec2& v) {
    std::vector<std::int64_t> c(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = mu[i] - det2(b[i], v);
    return c;
}

using ZnPoint = std::vector<std::int64_t>;

inline std::vector<ZnPoint> chow_polygon(const BConfig& b) {
    auto p = build_PB(b);
    auto mu = mu_vector(b, p);
    std::vector<ZnPoint> out;
    for (const auto& v : p.vertices) out.push_back(chow_coordinates(b, mu, v));
    return out;
}

inline std::vector<ZnPoint> secondary_polygon(const BConfig& b) {
    const std::int64_t d = compute_stats(b).degree;
    auto out = chow_polygon(b);
    for (auto& pt : out)
        for (auto& x : pt) x = d - x;
    return out;
}

// nu_i = min over Q_B of det(b_i, .)
inline std::vector<std::int64_t> nu_bar_offsets(const BConfig& b, const LatticePolygon& q) {
    std::vector<std::int64_t> nu(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::int64_t best = det2(b[i], q.vertices.front());
        for (const auto& v : q.vertices) best = std::min(best, det2(b[i], v));
        nu[i] = best;
    }
    return nu;
}

inline std::vector<ZnPoint> newton_polygon_DA(const BConfig& b) {
    auto q = build_QB(b);
    auto nu = nu_bar_offsets(b, q);
    std::vector<ZnPoint> out;
    for (const auto& v : q.vertices) {
        ZnPoint pt(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) pt[i] = det2(b[i], v) - nu[i];
        out.push_back(std::move(pt));
    }
    return out;
}

inline std::int64_t degree_via_mu(const BConfig& b) {
    auto mu = mu_vector(b);
    const std::int64_t s = std::accumulate(mu.begin(), mu.end(), std::int64_t{0});
    if (s % 2 != 0) throw InternalError("sum of mu_i is odd");
    return s / 2;
}

inline std::int64_t degree_DA(const BConfig& b) {
    auto nu = nu_bar_offsets(b, build_QB(b));
    return -std::accumulate(nu.begin(), nu.end(), std::int64_t{0});
}

inline std::int64_t twice_area(const LatticePolygon& p) {
    std::int64_t a = 0;
    const std::size_t m = p.vertices.size();
    for (std::size_t k = 0; k < m; ++k) a += det2(p.vertices[k], p.vertices[(k + 1) % m]);
    return a;
}

inline std::int64_t boundary_point_count(const LatticePolygon& p) {
    if (p.is_point()) return 1;
    std::int64_t s = 0;
    for (const auto& e : p.edges) s += gcd2(e);
    return s;
}

// Pick: #points = area + boundary/2 + 1.
inline std::int64_t lattice_point_count(const LatticePolygon& p) {
    if (p.is_point()) return 1;
    return (twice_area(p) + boundary_point_count(p)) / 2 + 1;
}

// Pick's count straight from the rows: 1 + (sum gcd(b_i) + sum_{i<j} det(b_i, b_j)) / 2
// with rows in counterclockwise order.
inline std::int64_t lattice_point_count(const BConfig& b) {
    auto order = ccw_order(b.rows);
    std::int64_t s = 0;
    for (auto i : order) s += gcd2(b[i]);
    for (std::size_t x = 0; x < order.size(); ++x)
        for (std::size_t y = x + 1; y < order.size(); ++y) s += det2(b[order[x]], b[order[y]]);
    return 1 + s / 2;
}

// All lattice points, row by row.
inline std::vector<Vec2> lattice_points(const LatticePolygon& p) {
    if (p.is_point()) return {p.vertices.front()};
    std::int64_t ylo = p.vertices[0][1], yhi = ylo, xlo = p.vertices[0][0], xhi = xlo;
    for (const auto& v : p.vertices) {
        ylo = std::min(ylo, v[1]);
        yhi = std::max(yhi, v[1]);
        xlo = std::min(xlo, v[0]);
        xhi = std::max(xhi, v[0]);
    }
    const std::size_t m = p.vertices.size();
    std::vector<Vec2> pts;
    for (std::int64_t y = ylo; y <= yhi; ++y)
        for (std::int64_t x = xlo; x <= xhi; ++x) {
            bool inside = true;
            for (std::size_t k = 0; k < m && inside; ++k) {
                const Vec2& a = p.vertices[k];
                const Vec2& c = p.vertices[(k + 1) % m];
                inside = det2({c[0] - a[0], c[1] - a[1]}, {x - a[0], y - a[1]}) >= 0;
            }
            if (inside) pts.push_back({x, y});
        }
    return pts;
}

// The edge multiset of P_B is invariant under negation.
inline bool is_centrally_symmetric(const BConfig& b) {
    std::map<Vec2, std::int64_t> length;
    for (const auto& r : b.rows) {
        if (is_zero(r)) continue;
        length[primitive_direction(r)] += gcd2(r);
    }
    for (const auto& [d, l] : length) {
        auto it = length.find({-d[0], -d[1]});
        if (it == length.end() || it->second != l) return false;
    }
    return true;
}

// Q built from the rotated rows (b_i2, -b_i1), translated to touch both axes
// from inside the first quadrant.
inline LatticePolygon dehomog_newton(const BConfig& b) {
    BConfig perp;
    for (const auto& r : b.rows) perp.rows.push_back({r[1], -r[0]});
    auto q = build_QB(perp);
    std::int64_t xlo = q.vertices[0][0], ylo = q.vertices[0][1];
    for (const auto& v : q.vertices) {
        xlo = std::min(xlo, v[0]);
        ylo = std::min(ylo, v[1]);
    }
    for (auto& v : q.vertices) v = {v[0] - xlo, v[1] - ylo};
    return q;
}

// ---------------------------------------------------------------------------
// Convex hulls of exponent sets lying in an affine plane of Z^n.

class NewtonPolygon {
public:
    explicit NewtonPolygon(std::vector<ZnPoint> points) {
        if (points.empty()) throw PreconditionError("Newton polygon of the zero polynomial");
        dim_ = points.front().size();
        origin_ = points.front();
        for (const auto& p : points) {
            ZnPoint d = diff(p);
            if (std::all_of(d.begin(), d.end(), [](std::int64_t x) { return x == 0; })) continue;
            if (basis_.empty()) {
                basis_.push_back(d);
            } else if (basis_.size() == 1 && !parallel(basis_[0], d)) {
                basis_.push_back(d);
            }
        }
        if (basis_.size() == 2) {
            for (std::size_t i = 0; i < dim_ && !chart_; ++i)
                for (std::size_t j = i + 1; j < dim_ && !chart_; ++j)
                    if (basis_[0][i] * basis_[1][j] - basis_[0][j] * basis_[1][i] != 0) chart_ = {i, j};
        }
        std::vector<std::pair<Vec2, std::size_t>> planar;
        for (std::size_t k = 0; k < points.size(); ++k) {
            auto c = coords(points[k]);
            if (!c) throw PreconditionError("support is not contained in a plane");
            planar.push_back({*c, k});
        }
        std::sort(planar.begin(), planar.end());
        planar.erase(std::unique(planar.begin(), planar.end(),
                                 [](const auto& a, const auto& b) { return a.first == b.first; }),
                     planar.end());
        // Andrew's monotone chain without collinear points.
        std::vector<std::pair<Vec2, std::size_t>> hull;
        if (planar.size() <= 2) {
            hull = planar;
        } else {
            auto cross = [](const Vec2& o, const Vec2& a, const Vec2& c) {
                return det2({a[0] - o[0], a[1] - o[1]}, {c[0] - o[0], c[1] - o[1]});
            };
            std::vector<std::pair<Vec2, std::size_t>> h(2 * planar.size());
            std::size_t k = 0;
            for (std::size_t i = 0; i < planar.size(); ++i) {
                while (k >= 2 && cross(h[k - 2].first, h[k - 1].first, planar[i].first) <= 0) --k;
                h[k++] = planar[i];
            }
            for (std::size_t i = planar.size() - 1, t = k + 1; i-- > 0;) {
                while (k >= t && cross(h[k - 2].first, h[k - 1].first, planar[i].first) <= 0) --k;
                h[k++] = planar[i];
            }
            h.resize(k - 1);
            hull = std::move(h);
        }
        for (const auto& [c, k] : hull) {
            hull2_.push_back(c);
            vertices_.push_back(points[k]);
        }
    }

    template <class P>
    static NewtonPolygon of(const P& f) {
        std::vector<ZnPoint> pts;
        for (std::size_t i = 0; i < f.size(); ++i) {
            auto e = f.exponents(i);
            pts.emplace_back(e.begin(), e.end());
        }
        return NewtonPolygon(std::move(pts));
    }

    // Vertices in counterclockwise order of the internal chart.
    const std::vector<ZnPoint>& vertices() const noexcept { return vertices_; }
    std::vector<ZnPoint> sorted_vertices() const {
        auto v = vertices_;
        std::sort(v.begin(), v.end());
        return v;
    }
    std::size_t dimension() const noexcept { return basis_.size(); }

    bool contains(const ZnPoint& p) const {
        if (p.size() != dim_) return false;
        auto c = coords(p);
        if (!c) return false;
        const std::size_t m = hull2_.size();
        if (m == 1) return *c == hull2_[0];
        if (m == 2) {
            const Vec2 &a = hull2_[0], &b = hull2_[1];
            if (det2({b[0] - a[0], b[1] - a[1]}, {(*c)[0] - a[0], (*c)[1] - a[1]}) != 0) return false;
            return std::min(a, b) <= *c && *c <= std::max(a, b);
        }
        for (std::size_t k = 0; k < m; ++k) {
            const Vec2 &a = hull2_[k], &b = hull2_[(k + 1) % m];
            if (det2({b[0] - a[0], b[1] - a[1]}, {(*c)[0] - a[0], (*c)[1] - a[1]}) < 0) return false;
        }
        return true;
    }

private:
    ZnPoint diff(const ZnPoint& p) const {
        ZnPoint d(dim_);
        for (std::size_t i = 0; i < dim_; ++i) d[i] = p[i] - origin_[i];
        return d;
    }
    static bool parallel(const ZnPoint& a, const ZnPoint& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j)
                if (a[i] * b[j] - a[j] * b[i] != 0) return false;
        return true;
    }
    // Integer coordinates (scaled by the chart determinant) of p - origin in
    // the basis; nullopt if p is off the affine span.
    std::optional<Vec2> coords(const ZnPoint& p) const {
        ZnPoint d = diff(p);
        if (basis_.empty()) {
            for (auto x : d)
                if (x != 0) return std::nullopt;
            return Vec2{0, 0};
        }
        if (basis_.size() == 1) {
            const ZnPoint& u = basis_[0];
            if (!parallel(u, d)) return std::nullopt;
            std::size_t i = 0;
            while (u[i] == 0) ++i;
            // d = (d_i / u_i) u; scale by u_i to stay integral.
            return Vec2{d[i] * (u[i] > 0 ? 1 : -1), 0};
        }
        const auto [i, j] = *chart_;
        const ZnPoint &u = basis_[0], &w = basis_[1];
        const std::int64_t det = u[i] * w[j] - u[j] * w[i];
        // Cramer: d = (a u + c w) / det
        const std::int64_t a = d[i] * w[j] - d[j] * w[i];
        const std::int64_t c = u[i] * d[j] - u[j] * d[i];
        for (std::size_t k = 0; k < dim_; ++k)
            if (a * u[k] + c * w[k] != det * d[k]) return std::nullopt;
        return det > 0 ? Vec2{a, c} : Vec2{-a, -c};
    }

    std::size_t dim_ = 0;
    ZnPoint origin_;
    std::vector<ZnPoint> basis_;
    std::optional<std::pair<std::size_t, std::size_t>> chart_;
    std::vector<Vec2> hull2_;
    std::vector<ZnPoint> vertices_;
};

inline std::vector<ZnPoint> sorted_points(std::vector<ZnPoint> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// SVG drawing: 20px per lattice unit, grid, polygon, edges labelled with the
// contributing row indices (1-based).
inline std::string polygon_svg(const LatticePolygon& p, const std::string& title = "") {
    constexpr int unit = 20, margin = 30;
    std::int64_t xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    for (const auto& v : p.vertices) {
        xlo = std::min(xlo, v[0]);
        xhi = std::max(xhi, v[0]);
        ylo = std::min(ylo, v[1]);
        yhi = std::max(yhi, v[1]);
    }
    const std::int64_t w = (xhi - xlo) * unit + 2 * margin, h = (yhi - ylo) * unit + 2 * margin;
    auto X = [&](std::int64_t x) { return (x - xlo) * unit + margin; };
    auto Y = [&](std::int64_t y) { return (yhi - y) * unit + margin; };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
      << ' ' << h << "\">\n";
    if (!title.empty()) s << "  <title>" << title << "</title>\n";
    s << "  <g stroke=\"#ddd\" stroke-width=\"1\">\n";
    for (std::int64_t x = xlo; x <= xhi; ++x)
        s << "    <line x1=\"" << X(x) << "\" y1=\"" << Y(ylo) << "\" x2=\"" << X(x) << "\" y2=\"" << Y(yhi) << "\"/>\n";
    for (std::int64_t y = ylo; y <= yhi; ++y)
        s << "    <line x1=\"" << X(xlo) << "\" y1=\"" << Y(y) << "\" x2=\"" << X(xhi) << "\" y2=\"" << Y(y) << "\"/>\n";
    s << "  </g>\n";
    if (p.vertices.size() >= 2) {
        s << "  <polygon fill=\"#cde\" stroke=\"#135\" stroke-width=\"2\" points=\"";
        for (const auto& v : p.vertices) s << X(v[0]) << ',' << Y(v[1]) << ' ';
        s << "\"/>\n";
    }
    for (const auto& q : lattice_points(p))
        s << "  <circle cx=\"" << X(q[0]) << "\" cy=\"" << Y(q[1]) << "\" r=\"2.5\" fill=\"#135\"/>\n";
    for (std::size_t k = 0; k < p.edges.size() && k < p.edge_rows.size() && p.vertices.size() >= 2; ++k) {
        const Vec2& a = p.vertices[k % p.vertices.size()];
        const double mx = X(a[0]) + p.edges[k][0] * unit / 2.0, my = Y(a[1]) - p.edges[k][1] * unit / 2.0;
        std::string label;
        for (auto r : p.edge_rows[k]) label += (label.empty() ? "" : ",") + std::to_string(r + 1);
        s << "  <text x=\"" << mx << "\" y=\"" << my << "\" font-size=\"10\" fill=\"#a20\">" << label << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace toric

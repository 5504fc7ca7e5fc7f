#include "hnpoly/polygon.hpp"

#include <algorithm>

namespace hnpoly {

namespace {

// Sorts descending by slope and merges equal slopes into one segment.
std::vector<SlopeSeg> canonicalize(std::vector<SlopeSeg> segs) {
    std::sort(segs.begin(), segs.end(),
              [](const SlopeSeg& a, const SlopeSeg& b) { return a.slope > b.slope; });
    std::vector<SlopeSeg> merged;
    for (auto& s : segs) {
        if (!merged.empty() && merged.back().slope == s.slope) {
            merged.back().width += s.width;
        } else {
            merged.push_back(std::move(s));
        }
    }
    return merged;
}

// cross(o, a, b) > 0 means a left turn o->a->b; 0 collinear.
Rat cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

ConcavePolygon ConcavePolygon::from_slopes(std::span<const std::pair<Rat, Rat>> pairs) {
    std::vector<SlopeSeg> segs;
    segs.reserve(pairs.size());
    for (const auto& [slope, width] : pairs) {
        if (width.sign() <= 0)
            throw DomainError("NonPositiveWidth",
                              "segment width " + width.str() + " must be positive");
        segs.push_back({slope, width});
    }
    ConcavePolygon p;
    p.segments_ = canonicalize(std::move(segs));
    return p;
}

ConcavePolygon ConcavePolygon::from_slopes(std::initializer_list<std::pair<Rat, Rat>> pairs) {
    return from_slopes(std::span<const std::pair<Rat, Rat>>(pairs.begin(), pairs.size()));
}

ConcavePolygon ConcavePolygon::from_vertices(std::span<const Point> vertices) {
    if (vertices.empty() || vertices.front() != Point{Rat(0), Rat(0)})
        throw DomainError("NotConcave", "vertex chain must start at (0,0)");
    std::vector<SlopeSeg> segs;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const Rat dx = vertices[i + 1].x - vertices[i].x;
        if (dx.sign() <= 0)
            throw DomainError("NotConcave", "vertex abscissae must strictly increase");
        segs.push_back({(vertices[i + 1].y - vertices[i].y) / dx, dx});
    }
    // Merge equal slopes, then demand strict decrease.
    std::vector<SlopeSeg> merged;
    for (auto& s : segs) {
        if (!merged.empty() && merged.back().slope == s.slope)
            merged.back().width += s.width;
        else
            merged.push_back(std::move(s));
    }
    for (std::size_t i = 0; i + 1 < merged.size(); ++i)
        if (!(merged[i].slope > merged[i + 1].slope))
            throw DomainError("NotConcave", "chord slopes must decrease");
    ConcavePolygon p;
    p.segments_ = std::move(merged);
    return p;
}

Rat ConcavePolygon::width() const {
    Rat w;
    for (const auto& s : segments_) w += s.width;
    return w;
}

Rat ConcavePolygon::end_height() const {
    Rat e;
    for (const auto& s : segments_) e += s.slope * s.width;
    return e;
}

Rat ConcavePolygon::evaluate(const Rat& x) const {
    if (x.sign() < 0 || x > width())
        throw DomainError("OutOfDomain",
                          "abscissa " + x.str() + " outside [0, " + width().str() + "]");
    Rat cx, cy;
    for (const auto& s : segments_) {
        if (x <= cx + s.width) return cy + s.slope * (x - cx);
        cx += s.width;
        cy += s.slope * s.width;
    }
    return cy;  // x == width (also the empty polygon at 0)
}

std::vector<Point> ConcavePolygon::vertices() const {
    std::vector<Point> vs{{Rat(0), Rat(0)}};
    Rat cx, cy;
    for (const auto& s : segments_) {
        cx += s.width;
        cy += s.slope * s.width;
        vs.push_back({cx, cy});
    }
    return vs;
}

std::vector<Point> ConcavePolygon::break_points() const {
    std::vector<Point> bs;
    Rat cx, cy;
    for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
        cx += segments_[i].width;
        cy += segments_[i].slope * segments_[i].width;
        bs.push_back({cx, cy});
    }
    return bs;
}

bool ConcavePolygon::contains(const Point& p) const {
    if (p.x.sign() < 0 || p.x > width()) return false;
    return evaluate(p.x) == p.y;
}

ConcavePolygon concat_slopes(const ConcavePolygon& a, const ConcavePolygon& b) {
    std::vector<std::pair<Rat, Rat>> pairs;
    for (const auto& s : a.segments_) pairs.emplace_back(s.slope, s.width);
    for (const auto& s : b.segments_) pairs.emplace_back(s.slope, s.width);
    return ConcavePolygon::from_slopes(pairs);
}

namespace {

std::vector<Rat> merged_abscissae(const ConcavePolygon& p, const ConcavePolygon& q) {
    std::vector<Rat> xs;
    for (const auto& v : p.vertices()) xs.push_back(v.x);
    for (const auto& v : q.vertices()) xs.push_back(v.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

bool pointwise_leq(const ConcavePolygon& p, const ConcavePolygon& q, Rat* witness) {
    // Piecewise-linear functions compare on the union of their vertex
    // abscissae; both must share the domain for the comparison to make sense.
    const Rat w = p.width();
    if (w != q.width()) {
        if (witness) *witness = min(w, q.width());
        return false;
    }
    for (const auto& x : merged_abscissae(p, q)) {
        if (p.evaluate(x) > q.evaluate(x)) {
            if (witness) *witness = x;
            return false;
        }
    }
    return true;
}

bool leq(const ConcavePolygon& p, const ConcavePolygon& q) {
    if (p.width() != q.width() || p.end_height() != q.end_height()) return false;
    return pointwise_leq(p, q);
}

std::vector<Point> contact_break_points(const ConcavePolygon& newton,
                                        const ConcavePolygon& hodge) {
    if (!leq(newton, hodge))
        throw DomainError("NotComparable", "lower polygon does not lie below the upper one");
    std::vector<Point> contacts;
    for (const auto& b : newton.break_points())
        if (hodge.evaluate(b.x) == b.y) contacts.push_back(b);
    return contacts;
}

ConcavePolygon normalize(const ConcavePolygon& p, long long d) {
    if (d <= 0) throw DomainError("NonPositiveDivisor", "normalization divisor must be >= 1");
    std::vector<std::pair<Rat, Rat>> pairs;
    for (const auto& s : p.segments()) pairs.emplace_back(s.slope, s.width / Rat(d));
    return ConcavePolygon::from_slopes(pairs);
}

ConcavePolygon average(std::span<const ConcavePolygon> ps) {
    if (ps.empty()) throw DomainError("EmptyInput", "average of no polygons");
    const Rat w = ps.front().width();
    for (const auto& p : ps)
        if (p.width() != w)
            throw DomainError("WidthMismatch", "polygons to average must share their width");

    std::vector<Rat> xs;
    for (const auto& p : ps)
        for (const auto& v : p.vertices()) xs.push_back(v.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    const Rat count = Rat(static_cast<long long>(ps.size()));
    std::vector<Point> verts;
    verts.reserve(xs.size());
    for (const auto& x : xs) {
        Rat sum;
        for (const auto& p : ps) sum += p.evaluate(x);
        verts.push_back({x, sum / count});
    }
    return ConcavePolygon::from_vertices(verts);
}

ConcavePolygon dual(const ConcavePolygon& p, const Rat& c) {
    std::vector<std::pair<Rat, Rat>> pairs;
    for (const auto& s : p.segments()) pairs.emplace_back(c - s.slope, s.width);
    return ConcavePolygon::from_slopes(pairs);
}

bool is_symmetric(const ConcavePolygon& p, const Rat& c) { return dual(p, c) == p; }

Point symmetric_point(const ConcavePolygon& p, const Point& x) {
    if (!is_symmetric(p, Rat(1)))
        throw DomainError("NotSymmetric", "polygon is not symmetric under slope duality");
    if (!p.contains(x))
        throw DomainError("NotOnPolygon",
                          "(" + x.x.str() + ", " + x.y.str() + ") does not lie on the polygon");
    return {p.width() - x.x, p.end_height() - x.x + x.y};
}

std::pair<ConcavePolygon, ConcavePolygon> split_at(const ConcavePolygon& p, const Point& x) {
    if (!p.contains(x) || x.x.sign() <= 0 || x.x >= p.width())
        throw DomainError("NotOnPolygon", "split point must lie on the polygon interior");
    std::vector<std::pair<Rat, Rat>> left, right;
    Rat cx;
    for (const auto& s : p.segments()) {
        if (cx + s.width <= x.x) {
            left.emplace_back(s.slope, s.width);
        } else if (cx >= x.x) {
            right.emplace_back(s.slope, s.width);
        } else {  // x falls strictly inside this segment
            left.emplace_back(s.slope, x.x - cx);
            right.emplace_back(s.slope, cx + s.width - x.x);
        }
        cx += s.width;
    }
    return {ConcavePolygon::from_slopes(left), ConcavePolygon::from_slopes(right)};
}

ConcavePolygon concave_envelope(std::span<const Point> points, const Point& anchor_end) {
    if (points.empty()) throw DomainError("EmptyInput", "envelope of an empty point set");
    if (anchor_end.x.sign() <= 0)
        throw DomainError("AnchorInconsistent", "anchor must have positive abscissa");

    std::vector<Point> pts(points.begin(), points.end());
    pts.push_back({Rat(0), Rat(0)});
    pts.push_back(anchor_end);
    for (const auto& p : pts) {
        if (p.x.sign() < 0 || p.x > anchor_end.x)
            throw DomainError("OutOfDomain", "point abscissa outside [0, anchor]");
        if (p.x == anchor_end.x && p.y > anchor_end.y)
            throw DomainError("AnchorInconsistent",
                              "point above the anchor at the right endpoint");
        if (p.x.sign() == 0 && p.y.sign() > 0)
            throw DomainError("AnchorInconsistent", "point above the origin anchor");
    }

    std::sort(pts.begin(), pts.end());
    // Keep only the highest point per abscissa; lower ones never touch the hull.
    std::vector<Point> cols;
    for (const auto& p : pts) {
        if (!cols.empty() && cols.back().x == p.x)
            cols.back() = p;  // sorted, so p.y >= previous
        else
            cols.push_back(p);
    }

    // Monotone-chain upper hull; pop on non-right turns.
    std::vector<Point> hull;
    for (const auto& p : cols) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p).sign() >= 0)
            hull.pop_back();
        hull.push_back(p);
    }
    return ConcavePolygon::from_vertices(hull);
}

}  // namespace hnpoly

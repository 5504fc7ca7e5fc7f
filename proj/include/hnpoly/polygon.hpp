#pragma once

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "hnpoly/rational.hpp"

namespace hnpoly {

struct Point {
    Rat x;
    Rat y;

    friend bool operator==(const Point&, const Point&) = default;
    // Lexicographic, for deterministic ordering of point sets.
    friend bool operator<(const Point& a, const Point& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

// One linear piece of a polygon; width is always positive.
struct SlopeSeg {
    Rat slope;
    Rat width;

    friend bool operator==(const SlopeSeg&, const SlopeSeg&) = default;
};

// Concave piecewise-linear function on [0, w] anchored at (0,0),
// stored in canonical slope-multiset form: segments sorted by strictly
// decreasing slope, adjacent equal slopes merged. The empty polygon
// (w = 0) is the function on the single point 0.
class ConcavePolygon {
public:
    ConcavePolygon() = default;

    // Builds from an unordered multiset of (slope, width) pairs.
    // Throws NonPositiveWidth if any width <= 0.
    static ConcavePolygon from_slopes(std::span<const std::pair<Rat, Rat>> pairs);
    static ConcavePolygon from_slopes(std::initializer_list<std::pair<Rat, Rat>> pairs);

    // Builds from the vertex chain (0,0)=v0, v1, ..., vk with strictly
    // increasing x; throws NotConcave unless chord slopes strictly decrease
    // (equal slopes are merged first).
    static ConcavePolygon from_vertices(std::span<const Point> vertices);

    const std::vector<SlopeSeg>& segments() const { return segments_; }
    bool empty() const { return segments_.empty(); }

    Rat width() const;
    Rat end_height() const;

    // Exact value of the function; throws OutOfDomain unless 0 <= x <= width.
    Rat evaluate(const Rat& x) const;

    // All vertices (0,0), ..., (w, e) in increasing x.
    std::vector<Point> vertices() const;
    // Interior points where the slope strictly decreases; endpoints excluded.
    std::vector<Point> break_points() const;

    bool contains(const Point& p) const;

    // Multiset union of segment slopes (used by split/concat identities).
    friend ConcavePolygon concat_slopes(const ConcavePolygon& a, const ConcavePolygon& b);

    friend bool operator==(const ConcavePolygon&, const ConcavePolygon&) = default;

private:
    std::vector<SlopeSeg> segments_;
};

// Dominance order on polygons with matching endpoints: true iff widths and
// end heights agree and P(t) <= Q(t) for every t in the union of breakpoint
// abscissae. Mismatched endpoints are incomparable, not an error.
bool leq(const ConcavePolygon& p, const ConcavePolygon& q);

// Pointwise P(t) <= Q(t) over the union of vertex abscissae (endpoint
// equality not required); on failure stores the first violating abscissa.
bool pointwise_leq(const ConcavePolygon& p, const ConcavePolygon& q, Rat* witness = nullptr);

// Break points of N lying on H, given leq(N, H); throws NotComparable
// otherwise. Endpoints are never reported.
std::vector<Point> contact_break_points(const ConcavePolygon& newton, const ConcavePolygon& hodge);

// P'(x) = (1/d) P(d x): widths shrink by d, slopes are unchanged.
ConcavePolygon normalize(const ConcavePolygon& p, long long d);

// Pointwise average of polygons of equal width; throws WidthMismatch.
ConcavePolygon average(std::span<const ConcavePolygon> ps);

// Slope multiset mapped lambda -> c - lambda; an involution.
ConcavePolygon dual(const ConcavePolygon& p, const Rat& c = Rat(1));

bool is_symmetric(const ConcavePolygon& p, const Rat& c = Rat(1));

// For a symmetric polygon, the mirror (w - x, e - x + P(x)) of an
// on-polygon point; an involution. Throws NotSymmetric / NotOnPolygon.
Point symmetric_point(const ConcavePolygon& p, const Point& x);

// Splits at an interior on-polygon point; the right piece is translated to
// start at the origin. Slope-multiset concatenation reproduces p.
std::pair<ConcavePolygon, ConcavePolygon> split_at(const ConcavePolygon& p, const Point& x);

// Least concave function >= all points, equal to 0 at 0 and passing through
// anchor_end; i.e. the upper hull of points with both anchors adjoined.
// Throws EmptyInput, AnchorInconsistent, OutOfDomain.
ConcavePolygon concave_envelope(std::span<const Point> points, const Point& anchor_end);

}  // namespace hnpoly

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hnpoly/elpel.hpp"
#include "hnpoly/isocrystal.hpp"
#include "hnpoly/polygon.hpp"

namespace hnpoly {

// Numerical invariants of a filtered isocrystal with group structure:
// slope data with the degree-d action, per-embedding filtration jumps, and
// optionally a Harder-Narasimhan polygon when one is known. Minuscule data
// comes from a cocharacter (jumps in {0,1}); general integer jumps are
// accepted but the PEL-specific checks stay minuscule-only.
class FilteredInvariant {
public:
    FilteredInvariant(CaseData cs, FIsocrystal newton, const MuData& mu,
                      std::optional<ConcavePolygon> hn = std::nullopt);
    FilteredInvariant(CaseData cs, FIsocrystal newton,
                      std::vector<std::vector<std::int64_t>> jumps,
                      std::optional<ConcavePolygon> hn = std::nullopt);

    const CaseData& case_data() const { return case_; }
    const FIsocrystal& newton() const { return newton_; }
    // Per-embedding jump multisets, each of size n, sorted descending.
    const std::vector<std::vector<std::int64_t>>& jumps() const { return jumps_; }
    const std::optional<ConcavePolygon>& hn() const { return hn_; }

    bool minuscule() const;
    // The cocharacter datum, when the jumps are minuscule.
    std::optional<MuData> mu() const;

    std::int64_t n() const { return case_.n; }
    std::int64_t d() const { return case_.d; }

    ConcavePolygon newton_poly() const;  // normalized, over [0, n]
    ConcavePolygon hodge_poly() const;   // embedding average, over [0, n]

    friend bool operator==(const FilteredInvariant&, const FilteredInvariant&) = default;

private:
    CaseData case_;
    FIsocrystal newton_;
    std::vector<std::vector<std::int64_t>> jumps_;
    std::optional<ConcavePolygon> hn_;
};

// Filtration endpoint sum(i * dim gr^i), unnormalized over all embeddings.
Rat t_H(const FilteredInvariant& inv);
// The same divided by d, matching the normalized polygons.
Rat t_H_normalized(const FilteredInvariant& inv);

// Polygon-level necessary conditions for weak admissibility: endpoint
// equality t_N = t_H, Newton below Hodge, and (when a HN polygon is
// attached) HN below Newton. Necessary, not sufficient.
bool admissible_check(const FilteredInvariant& inv);

// Contact break points of Newton on Hodge paired with their split partner:
// in the PEL cases the symmetric mirror (restricted to x.x <= n/2), in the
// EL case the point itself. Empty when the contact condition fails. Throws
// NotAdmissible unless admissible_check passes.
std::vector<std::pair<Point, Point>> detect_hn(const FilteredInvariant& inv);

struct CheckResult {
    bool ok = true;
    bool applicable = true;  // false when the check is vacuous for the input
    std::string witness;     // filled on failure
};

struct VerificationReport {
    CheckResult newton_split;      // (a)
    CheckResult hodge_split;       // (b)
    CheckResult hn_contacts;       // (c)
    CheckResult pel_duality;       // (d)
    CheckResult pieces_admissible; // (e)

    bool all_ok() const {
        return newton_split.ok && hodge_split.ok && hn_contacts.ok && pel_duality.ok &&
               pieces_admissible.ok;
    }
};

struct HNDecomposition {
    Point x;
    Point xhat;
    std::vector<FilteredInvariant> pieces;  // 2 when x == xhat, else 3
    VerificationReport verdicts;
};

// Splits the invariant at a detected contact pair: Newton data by the
// polygon split, filtration data by handing each embedding's largest jumps
// to the earliest piece. Pieces are plain (case EL) invariants that must
// satisfy t_N = t_H exactly; PieceNotAdmissible signals the impossible.
HNDecomposition decompose(const FilteredInvariant& inv, const Point& x, const Point& xhat);

// Re-derives every statement the decomposition asserts against the parent;
// failures are reported with witnesses, never thrown.
VerificationReport verify(const HNDecomposition& dec, const FilteredInvariant& parent);

// True iff the polygon passes through both points and each sits at a vertex
// (a break point or a polygon endpoint).
bool hn_passes_contacts(const ConcavePolygon& hn, const Point& x, const Point& xhat);

}  // namespace hnpoly

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hnpoly/isocrystal.hpp"
#include "hnpoly/polygon.hpp"

namespace hnpoly {

enum class Case { EL, PEL_C, PEL_U };

std::string case_name(Case c);
Case case_from_name(const std::string& name);

// Group datum: rank-n module over the degree-d unramified extension, with
// the case tag selecting the extra pairing. PEL_C needs n even (symplectic
// pairing), PEL_U needs d even (the involution is the half-turn on
// embeddings).
struct CaseData {
    Case kind = Case::EL;
    std::int64_t d = 1;
    std::int64_t n = 1;

    friend bool operator==(const CaseData&, const CaseData&) = default;
};

// Minuscule cocharacter: one (p_tau, q_tau) pair per embedding.
struct MuData {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;

    friend bool operator==(const MuData&, const MuData&) = default;
};

struct MuValidation {
    bool ok = true;
    std::vector<std::string> reasons;

    explicit operator bool() const { return ok; }
};

MuValidation validate_mu(const CaseData& cs, const MuData& mu);

// Throws InvalidMu (with the reason list) unless validate_mu passes.
void require_valid_mu(const CaseData& cs, const MuData& mu);

// The Galois-averaged Hodge polygon: mean over embeddings of the two-slope
// step polygon [(1, p_tau), (0, q_tau)]; width n.
ConcavePolygon mu_average(const CaseData& cs, const MuData& mu);

// One compatible Newton stratum: the normalized polygon over [0, n] and the
// raw slope data realizing it.
struct NewtonPoint {
    ConcavePolygon poly;
    FIsocrystal slopes_raw;

    friend bool operator==(const NewtonPoint&, const NewtonPoint&) = default;
};

// All Newton points compatible with mu: slopes in [0,1], below mu_average
// with matching endpoints, break points at (x, y) with x integral and y in
// (1/d)Z, symmetric in the PEL cases. Output is dominance-descending where
// comparable (mu-ordinary first when present) with a lexicographic slope
// tiebreak, and deterministic. max_denominator > 0 caps segment slope
// denominators as a runtime guard; 0 means the exact bound d*n.
std::vector<NewtonPoint> enumerate_B(const CaseData& cs, const MuData& mu,
                                     std::int64_t max_denominator = 0);

// True iff no other member of B lies strictly below b; throws NotMember.
bool is_basic(const NewtonPoint& b, const std::vector<NewtonPoint>& B);

// Moduli-space dimension of the stratum datum.
Rat rz_dimension(const CaseData& cs, const MuData& mu);

struct StrataEntry {
    NewtonPoint newton;
    bool basic = false;
    std::vector<Point> contact_break_points;
    bool hn_condition = false;  // some non-extremal Newton break touches the Hodge polygon
    Rat dim;
};

using StrataReport = std::vector<StrataEntry>;

StrataReport strata_report(const CaseData& cs, const MuData& mu,
                           std::int64_t max_denominator = 0);

}  // namespace hnpoly

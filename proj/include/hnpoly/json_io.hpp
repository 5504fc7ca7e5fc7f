#pragma once

#include <json.hpp>

#include "hnpoly/elpel.hpp"
#include "hnpoly/ffgs.hpp"
#include "hnpoly/hodge_newton.hpp"
#include "hnpoly/isocrystal.hpp"
#include "hnpoly/polygon.hpp"

// JSON wire formats. Rationals travel as canonical [num, den] integer
// pairs; points as {"x":[a,b],"y":[c,d]} (the compact [x, y] pair form is
// accepted on input). Decoding failures raise DomainError("SchemaError").

namespace hnpoly::json {

using nlohmann::json;

json encode(const Rat& r);
json encode(const Point& p);
json encode(const ConcavePolygon& p);
json encode(const SlopeMultiset& s);
json encode(const FIsocrystal& iso);
json encode(const CaseData& cs, const MuData& mu);
json encode(const NewtonPoint& np);
json encode(const StrataEntry& entry);
json encode(const StrataReport& report);
json encode(const SubobjectCloud& cloud);
json encode(const OmegaDivisors& omega);
json encode(const TorsionTower& tower);
json encode(const TowerLimit& limit);
json encode(const ChainVerdict& verdict);
json encode(const MuValidation& v);
json encode(const FilteredInvariant& inv);
json encode(const VerificationReport& report);
json encode(const HNDecomposition& dec);

Rat decode_rat(const json& j);
Point decode_point(const json& j);
ConcavePolygon decode_polygon(const json& j);
SlopeMultiset decode_multiset(const json& j);
FIsocrystal decode_fisocrystal(const json& j);
std::pair<CaseData, MuData> decode_datum(const json& j);
SubobjectCloud decode_cloud(const json& j);
OmegaDivisors decode_omega(const json& j);
TorsionTower decode_tower(const json& j);
FilteredInvariant decode_invariant(const json& j);
HNDecomposition decode_decomposition(const json& j);

}  // namespace hnpoly::json

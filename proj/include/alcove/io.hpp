#ifndef ALCOVE_IO_HPP
#define ALCOVE_IO_HPP

#include <ostream>
#include <string>

#include <json.hpp>

#include "alcove/polytope.hpp"

namespace alcove {

using json = nlohmann::json;

/// Alcove points serialize as plain arrays of n reals.
json to_json(const AlcovePoint& x);
AlcovePoint alcove_point_from_json(const json& j, double tol = kPointTol);

/// Cell signatures serialize as {"Z0": [[i,j],...], "Z1": [[i,j],...]}.
json to_json(const CellSignature& sig);
CellSignature signature_from_json(const json& j);

/// Matrices serialize as row-major arrays of [re, im] pairs.
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// Configurations: {"n", "genus", "classes", "handles", "punctures"}.
json to_json(const Configuration& cfg);
Configuration configuration_from_json(const json& j, double tol = kClassMemberTol);

json to_json(const SurfaceGroupData& data);
SurfaceGroupData surface_data_from_json(const json& j);

/// Reports carry their tolerances alongside every number.
json to_json(const FeasibilityReport& report, const SolveOptions& opts,
             bool include_witness);
json to_json(const IntervalResult& r);
json to_json(const ConvexityReport& r);
json to_json(const RealEqualityReport& r);
json to_json(const DominantCellReport& r, int n, double tol);

/// Compact "i-j" rendering of a root set, ";"-separated (CSV cell columns).
std::string root_set_to_string(const std::vector<RootIndex>& roots);

/// Cloud CSV: header x1..xn,cell_Z0,cell_Z1, one row per point.
void write_cloud_csv(std::ostream& os, const AlcoveCloud& cloud,
                     double classify_tol = kClassifyTol);

}  // namespace alcove

#endif

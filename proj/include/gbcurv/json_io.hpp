#ifndef GBCURV_JSON_IO_HPP
#define GBCURV_JSON_IO_HPP

#include <json.hpp>
#include <memory>
#include <string>

#include "gbcurv/double_form.hpp"
#include "gbcurv/identities.hpp"
#include "gbcurv/immersion.hpp"
#include "gbcurv/verification.hpp"

namespace gbcurv {

using Json = nlohmann::ordered_json;

/// Serialize with every float at 17 significant digits (and a forced decimal
/// marker), so reports are byte-reproducible and round-trip losslessly.
std::string dump_json(const Json& j, int indent = 2);

Json to_json(const DoubleForm& form);
DoubleForm double_form_from_json(const Json& j);

Json to_json(const Eigen::VectorXd& v);
Json to_json(const std::vector<double>& v);

Json to_json(const IdentityResult& r);
Json to_json(const InvariantReport& r);
Json to_json(const HarmonicityReport& r);
Json to_json(const SphereCheckReport& r);
Json to_json(const VariationResult& r);

/// Immersion file: {"n","p","domain":{"min","max","periodic"},"grid",
/// "points" (row-major positions)}.
std::unique_ptr<ImmersionChart> load_grid_chart(const std::string& path);
std::unique_ptr<ImmersionChart> grid_chart_from_json(const Json& j);

} // namespace gbcurv

#endif

#pragma once

#include <nlohmann/json.hpp>

#include "pfp/boundary.hpp"
#include "pfp/estimators.hpp"
#include "pfp/measure.hpp"
#include "pfp/norm_checks.hpp"
#include "pfp/rademacher.hpp"
#include "pfp/weights.hpp"

namespace pfp {

// JSON views of the result types. Witness vectors are not serialized; a
// witness is identified by (witness_seed, witness_restart).

using json = nlohmann::json;

/// Finite doubles as numbers, infinities and NaN as null.
json number(double x);

json report_json(const NormEstimate& e);
json report_json(const AnchorNorms& a);
json report_json(const DualityReport& r);
json report_json(const MonotonicityReport& r);
json report_json(const AmplificationReport& r);
json report_json(const TensorPowerReport& r);
json report_json(const KahaneReport& r);
json report_json(const EntropyCurve& c);
json report_json(const SpeedReport& s);
json report_json(const MembershipReport& r);
json report_json(const GramReport& r);
json report_json(const GibbsReport& r);
json report_json(const CriteriaReport& r);

/// First-letter masses, hitting probabilities and fixed-point diagnostics.
json boundary_json(const BoundaryMeasure& nu, const Measure& mu);

} // namespace pfp

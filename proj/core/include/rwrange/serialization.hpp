#pragma once

#include <string>

#include "rwrange/oracle.hpp"
#include "rwrange/range_laws.hpp"
#include "rwrange/resistance.hpp"
#include "rwrange/uniformity.hpp"

namespace rwrange {

// Machine-readable report emitters. Output is deterministic: object keys are
// ordered, doubles are shortest-round-trip, and no timestamps appear (logs
// carry those separately).

std::string report_json(const ResistanceProfile& profile);
std::string report_csv(const ResistanceProfile& profile); // n, rho, lo, hi

std::string report_json(const RangeReport& report);
std::string report_csv(const RangeReport& report); // trial, n, R_n, final_distance

std::string report_json(const FluctuationReport& report);
std::string report_csv(const FluctuationReport& report); // stage, k, estimate, ci_lo, ci_hi, target

std::string report_json(const UniformityReport& report);
std::string report_csv(const UniformityReport& report); // n, gap_or_proxy, analytic_bound

std::string report_json(const RecurrenceReport& report);
std::string report_csv(const RecurrenceReport& report); // n, inf_partial_sum

std::string report_json(const UcAlphaFit& fit);
std::string report_json(const TailExponentFit& fit);
std::string report_json(const FBoundsReport& report);
std::string report_json(const LastExitTable& table);
std::string report_json(const ExactRangeLaw& law);

/// Locale-free shortest-round-trip double formatting (CSV cells).
std::string format_double(double v);

} // namespace rwrange

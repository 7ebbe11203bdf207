#ifndef KSR_JSON_IO_HPP
#define KSR_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "ksr/barrier.hpp"
#include "ksr/distribution.hpp"
#include "ksr/graphs.hpp"
#include "ksr/maxent.hpp"
#include "ksr/mixedchar.hpp"
#include "ksr/multiaffine.hpp"
#include "ksr/zxpoly.hpp"

namespace ksr {

using Json = nlohmann::ordered_json;

Json dist_to_json(const SubsetDistribution& dist);
SubsetDistribution dist_from_json(const Json& j);
SubsetDistribution dist_from_file(const std::string& path);

Json multiaffine_to_json(const MultiAffinePoly& p);
Json zx_to_json(const ZXPoly& p);
Json univariate_to_json(const UnivariatePoly& p);

Json certificate_to_json(const SubsetCertificate& c);
Json maxent_model_to_json(const MaxEntModel& m);
Json thinness_to_json(const ThinnessCertificate& c);
Json bound_report_to_json(const BoundReport& r);

/// Text vectors file: header "d m", then m lines of d entries, each a
/// rational "num/den" or a decimal.
VectorSystem vectors_from_file(const std::string& path);

/// Write-to-temp-then-rename; never leaves a partial file behind.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace ksr

#endif

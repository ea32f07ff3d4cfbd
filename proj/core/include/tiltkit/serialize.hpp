#pragma once

#include <string>

#include "json.hpp"
#include "tiltkit/arith.hpp"
#include "tiltkit/closure.hpp"
#include "tiltkit/report.hpp"
#include "tiltkit/tilt.hpp"

namespace tiltkit {

using ojson = nlohmann::ordered_json;

/// Elements serialize as arrays of residues (coefficient vector); PerfSeries
/// elements as sparse [scaled_exponent, coefficient] pairs.
ojson elem_to_json(const RingElem& a);
RingElem elem_from_json(const RingCtxPtr& ctx, const ojson& j);

/// {"ctx": <descriptor>, "seq": [...], "prec": <int>}
ojson tilt_to_json(const TiltElem& x);
TiltElem tilt_from_json(const ojson& j);

ojson report_to_json(const CheckReport& rep);

} // namespace tiltkit

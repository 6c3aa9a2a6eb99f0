#pragma once

namespace wc {

// Serial is the reference path; parallel kernels must reproduce it exactly.
enum class Execution { serial, parallel };

} // namespace wc

#pragma once

#include <string>

#include "tileperiod/io.hpp"

namespace tileperiod {

// Grid of coloured squares with a legend. Colours depend only on tile ids.
// The fundamental domain is drawn twice along every wrapped axis with its
// outline marked.
std::string render_svg(const io::Witness& w);

} // namespace tileperiod

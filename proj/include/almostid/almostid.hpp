// Umbrella header.

#ifndef ALMOSTID_ALMOSTID_HPP
#define ALMOSTID_ALMOSTID_HPP

#include "almostid/precision.hpp"
#include "almostid/rational.hpp"
#include "almostid/series.hpp"
#include "almostid/mellin.hpp"
#include "almostid/gallery.hpp"
#include "almostid/report.hpp"
#include "almostid/cli.hpp"

#endif  // ALMOSTID_ALMOSTID_HPP

#ifndef BEZSUB_BEZSUB_HPP
#define BEZSUB_BEZSUB_HPP

#include "bezsub/bernstein.hpp"
#include "bezsub/curve_io.hpp"
#include "bezsub/decasteljau.hpp"
#include "bezsub/derivatives.hpp"
#include "bezsub/experiment.hpp"
#include "bezsub/fastsub.hpp"
#include "bezsub/geometry.hpp"
#include "bezsub/instrumentation.hpp"
#include "bezsub/rational.hpp"
#include "bezsub/surface.hpp"
#include "bezsub/transform.hpp"

#endif // BEZSUB_BEZSUB_HPP

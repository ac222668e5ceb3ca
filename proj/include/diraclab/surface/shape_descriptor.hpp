#pragma once

#include <string_view>

#include "diraclab/surface/embedded_surface.hpp"

namespace dlab::surface {

/// sphere:r=1, ellipsoid:a=1,c=1.2, hyp-geodesic-sphere:r=0.8,kappa=1,
/// profile:file=path. sphere, ellipsoid and profile accept kappa=K to
/// place the surface in hyperbolic space through exp_o.
/// Throws ParseError for malformed text and GeometryError for invalid shapes.
EmbeddedSurface make_surface(std::string_view descriptor);

}  // namespace dlab::surface

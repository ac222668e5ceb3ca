#include "diraclab/surface/shape_descriptor.hpp"

#include "diraclab/errors.hpp"
#include "diraclab/numerics/descriptor.hpp"

namespace dlab::surface {

EmbeddedSurface make_surface(std::string_view text) {
  const num::Descriptor d = num::parse_descriptor(text);
  ProfilePtr profile;
  if (d.name == "sphere") {
    d.allow_only({"r", "kappa"});
    profile = sphere_profile(d.number_or("r", 1.0));
  } else if (d.name == "ellipsoid") {
    d.allow_only({"a", "c", "kappa"});
    profile = ellipsoid_profile(d.number_or("a", 1.0), d.number("c"));
  } else if (d.name == "profile") {
    d.allow_only({"file", "kappa"});
    profile = load_profile(d.text("file"));
  } else if (d.name == "hyp-geodesic-sphere") {
    d.allow_only({"r", "kappa"});
    return EmbeddedSurface::hyperbolic_geodesic_sphere(d.number("r"), d.number_or("kappa", 1.0));
  } else {
    throw ParseError("unknown shape '" + d.name + "'");
  }
  if (d.has("kappa")) return EmbeddedSurface::hyperbolic(profile, d.number("kappa"));
  return EmbeddedSurface::euclidean(profile);
}

}  // namespace dlab::surface

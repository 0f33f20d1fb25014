#pragma once

#include <string>
#include <string_view>

#include "sigma/geometry.hpp"

namespace sigma {

/// Shape files are key = value text:
///
///   kind = ball | ellipse | box | polytope | random_polytope | offset | graph
///   dim  = 2 | 3
///   ball:            center = x y [z], radius = r
///   ellipse:         semi_axes = a b [c]
///   box:             extents = a b [c]
///   polytope:        halfspace = nx ny [nz] c      (one line per facet)
///   random_polytope: n_facets = N, seed = S
///   offset:          epsilon = e, plus the base polytope's keys prefixed
///                    with `base.` (base.kind = box | polytope | random_polytope)
///   graph:           alpha = a, base = b, terms = M, window = lo hi
///
/// parse_shape(serialize_shape(s)) == s for every valid shape.
Shape parse_shape(std::string_view text);
std::string serialize_shape(const Shape& s);

Shape load_shape(const std::string& path);
void save_shape(const std::string& path, const Shape& s);

}  // namespace sigma

#pragma once

#include <ostream>

#include "gordian/cone_disk.hpp"
#include "gordian/thickness.hpp"

namespace gordian {

// Watertight tube of the given radius around one curve: one ring of
// `segments` vertices per curve vertex, parallel-transport frames with the
// closure twist distributed evenly; open curves get capped ends.
void write_tube_obj(std::ostream& os, const PolyCurve& c, double radius,
                    int segments = 16);

// All components of a link as one OBJ file.
void write_link_obj(std::ostream& os, const ThickLink& link, int segments = 16);

// Triangle fan of the cone disk (apex, boundary[i], boundary[i+1]).
void write_cone_obj(std::ostream& os, const ConeDisk& disk);

} // namespace gordian

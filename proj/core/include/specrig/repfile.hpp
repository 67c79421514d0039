#pragma once

#include <string>

#include "specrig/groups.hpp"

namespace specrig {

// Representation files are UTF-8 JSON:
//
//   {
//     "ambient": {"kind": "sl" | "affine", "n": 2},
//     "generators": [
//       {"name": "a", "matrix": [["1","2"],["0","1"]]},
//       {"name": "g", "matrix": [[...]], "translation": ["1","0","0"]}
//     ],
//     "symmetric_closure": true,
//     "invariant_form": [[...]],   // optional bilinear form matrix
//     "zariski_dense": true        // optional density assertion
//   }
//
// Matrices are row-major; rationals are strings "p/q" or plain integers.
// Affine generators give the linear part in "matrix" plus "translation".
RepresentationSpec parse_representation(const std::string& json_text);
RepresentationSpec load_representation(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace specrig

#pragma once

#include <json.hpp>

#include "qsphere/haar.hpp"
#include "qsphere/qmatrix.hpp"
#include "qsphere/scalarq.hpp"
#include "qsphere/sphere.hpp"

namespace qsphere {

/// Exponent/coefficient pair list: [[exp, "p/q"], ...] in ascending exponent.
nlohmann::json to_json(const QScalar& x);

/// {"num": [...], "den": [...]}
nlohmann::json to_json(const QRat& x);

nlohmann::json to_json(Signature sig);

/// Term array [{"coeff": {"num": .., "den": ..}, "word": ["z1", "z2'"]}, ...]
nlohmann::json to_json(const NCPoly& x);
nlohmann::json to_json(const APoly& x);
nlohmann::json to_json(const UPoly& x);

}  // namespace qsphere

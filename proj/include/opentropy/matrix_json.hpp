#pragma once

#include <json.hpp>
#include <string>

#include "opentropy/matrix_core.hpp"

namespace opentropy {

// Matrix JSON: {"dim": d, "re": [[...]], "im": [[...]]}, row-major, "im"
// optional on input and emitted only when some entry is nonzero.
nlohmann::json matrix_to_json(const HermitianMatrix& h);
nlohmann::json matrix_to_json(const ComplexMatrix& m);

// Throws InvalidInput on a malformed document and NotHermitian when the
// matrix fails validation at tolerance `tol`.
HermitianMatrix hermitian_from_json(const nlohmann::json& j,
                                    double tol = ToleranceConfig{}.tol_eig);
ComplexMatrix complex_from_json(const nlohmann::json& j);

HermitianMatrix load_matrix_file(const std::string& path,
                                 double tol = ToleranceConfig{}.tol_eig);

}  // namespace opentropy

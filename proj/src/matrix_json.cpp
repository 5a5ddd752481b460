#include "opentropy/matrix_json.hpp"

#include <fstream>
#include <sstream>

namespace opentropy {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  bool has_imag = false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
      has_imag = has_imag || m(i, j).imag() != 0.0;
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  json out;
  if (m.rows() == m.cols()) {
    out["dim"] = m.rows();
  } else {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  out["re"] = std::move(re);
  if (has_imag) out["im"] = std::move(im);
  return out;
}

json matrix_to_json(const HermitianMatrix& h) { return matrix_to_json(h.matrix()); }

namespace {

Eigen::MatrixXd read_block(const json& arr, Eigen::Index rows, Eigen::Index cols,
                           const char* key) {
  if (!arr.is_array() || static_cast<Eigen::Index>(arr.size()) != rows) {
    throw Error(ErrorCode::InvalidInput, std::string("\"") + key + "\" must have " +
                                             std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = arr[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw Error(ErrorCode::InvalidInput, std::string("\"") + key + "\" row " +
                                               std::to_string(i) + " has wrong length");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& v = row[static_cast<size_t>(j)];
      if (!v.is_number()) {
        throw Error(ErrorCode::InvalidInput, std::string("\"") + key + "\" has a non-number");
      }
      out(i, j) = v.get<double>();
    }
  }
  return out;
}

}  // namespace

ComplexMatrix complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) {
    throw Error(ErrorCode::InvalidInput, "matrix JSON needs an object with \"re\"");
  }
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
      throw Error(ErrorCode::InvalidInput, "\"dim\" must be a positive integer");
    }
    rows = cols = j["dim"].get<Eigen::Index>();
  } else if (j.contains("rows") && j.contains("cols")) {
    rows = j["rows"].get<Eigen::Index>();
    cols = j["cols"].get<Eigen::Index>();
  } else {
    throw Error(ErrorCode::InvalidInput, "matrix JSON needs \"dim\"");
  }
  Eigen::MatrixXd re = read_block(j["re"], rows, cols, "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(rows, cols);
  if (j.contains("im")) im = read_block(j["im"], rows, cols, "im");
  ComplexMatrix m(rows, cols);
  m.real() = re;
  m.imag() = im;
  return m;
}

HermitianMatrix hermitian_from_json(const json& j, double tol) {
  if (!j.is_object() || !j.contains("dim")) {
    throw Error(ErrorCode::InvalidInput, "Hermitian matrix JSON needs \"dim\"");
  }
  return HermitianMatrix::from_matrix(complex_from_json(j), tol);
}

HermitianMatrix load_matrix_file(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
  return hermitian_from_json(j, tol);
}

}  // namespace opentropy

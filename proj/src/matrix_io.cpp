#include "nrt/matrix_io.hpp"

#include <cmath>
#include <fstream>

namespace nrt {

namespace {

using nlohmann::json;

Eigen::MatrixXd parse_real_grid(const json& j, const char* key, Eigen::Index n) {
  if (!j.contains(key) || !j[key].is_array() || static_cast<Eigen::Index>(j[key].size()) != n) {
    throw InvalidInput(std::string("matrix JSON: '") + key + "' must be an array of " +
                       std::to_string(n) + " rows");
  }
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[key][static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw InvalidInput(std::string("matrix JSON: ragged '") + key + "' row " +
                         std::to_string(i));
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) {
        throw InvalidInput(std::string("matrix JSON: non-numeric entry in '") + key + "'");
      }
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        throw InvalidInput(std::string("matrix JSON: non-finite entry in '") + key + "'");
      }
      M(i, k) = x;
    }
  }
  return M;
}

}  // namespace

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw InvalidInput("matrix JSON: expected object with integer 'n'");
  }
  const long long n_raw = j["n"].get<long long>();
  if (n_raw < 1 || n_raw > 4096) {
    throw InvalidInput("matrix JSON: 'n' out of range [1, 4096]");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(n_raw);
  const Eigen::MatrixXd re = parse_real_grid(j, "re", n);
  const Eigen::MatrixXd im = parse_real_grid(j, "im", n);
  ComplexMatrix A(n, n);
  A.real() = re;
  A.imag() = im;
  return A;
}

nlohmann::json matrix_to_json(const MatrixRef& A) {
  require_valid(A, "matrix_to_json");
  nlohmann::json j;
  j["n"] = A.rows();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    nlohmann::json rrow = nlohmann::json::array();
    nlohmann::json irow = nlohmann::json::array();
    for (Eigen::Index k = 0; k < A.cols(); ++k) {
      rrow.push_back(A(i, k).real());
      irow.push_back(A(i, k).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open matrix file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed JSON in " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::string& path, const MatrixRef& A, const nlohmann::json* extra) {
  nlohmann::json j = matrix_to_json(A);
  if (extra != nullptr) {
    for (auto it = extra->begin(); it != extra->end(); ++it) {
      j[it.key()] = it.value();
    }
  }
  std::ofstream out(path);
  if (!out) {
    throw InvalidInput("cannot write matrix file: " + path);
  }
  out << j.dump(2) << '\n';
}

}  // namespace nrt

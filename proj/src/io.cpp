// Copyright 2026 The qness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qness/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace qness {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return ss.str();
}

int require_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw ParseError(std::string("state file: '") + key + "' must be an integer");
  return doc[key].get<int>();
}

Eigen::MatrixXd read_real_matrix(const json& doc, const char* key, int dim) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw ParseError(std::string("state file: '") + key + "' must be a 2-D array");
  const json& rows = doc[key];
  if (static_cast<int>(rows.size()) != dim)
    throw ParseError(std::string("state file: '") + key + "' has " + std::to_string(rows.size()) +
                     " rows, expected " + std::to_string(dim));
  Eigen::MatrixXd out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      throw ParseError(std::string("state file: row ") + std::to_string(r) + " of '" + key + "' must have " +
                       std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) {
      const json& x = row[static_cast<std::size_t>(c)];
      if (!x.is_number()) throw ParseError(std::string("state file: non-numeric entry in '") + key + "'");
      out(r, c) = x.get<double>();
    }
  }
  return out;
}

}  // namespace

BipartiteState LoadedState::bipartite(std::optional<std::pair<int, int>> override_dims) const {
  const auto d = override_dims ? override_dims : dims;
  if (!d) throw ParseError("state has no bipartite dims");
  if (override_dims && dims && *override_dims != *dims)
    throw ParseError("requested dims disagree with the dims stored in the state file");
  return BipartiteState(state, d->first, d->second);
}

LoadedState parse_state(const json& doc) {
  if (!doc.is_object()) throw ParseError("state file: top level must be an object");
  const int dim = require_int(doc, "dim");
  if (dim < 1) throw ParseError("state file: 'dim' must be positive");
  const Eigen::MatrixXd re = read_real_matrix(doc, "re", dim);
  const Eigen::MatrixXd im = read_real_matrix(doc, "im", dim);

  std::optional<std::pair<int, int>> dims;
  if (doc.contains("dims")) {
    const json& d = doc["dims"];
    if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer())
      throw ParseError("state file: 'dims' must be [dim_a, dim_b]");
    dims = std::make_pair(d[0].get<int>(), d[1].get<int>());
    if (dims->first < 1 || dims->second < 1 || dims->first * dims->second != dim)
      throw ParseError("state file: 'dims' product does not equal 'dim'");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = cplx(re(r, c), im(r, c));
  return {validate_density(ComplexOperator(std::move(m))), dims};
}

LoadedState load_state(const std::string& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("state file '" + path + "': " + e.what());
  }
  return parse_state(doc);
}

json state_to_json(const DensityMatrix& rho, std::optional<std::pair<int, int>> dims) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < rho.dim(); ++r) {
    json rr = json::array(), ii = json::array();
    for (int c = 0; c < rho.dim(); ++c) {
      rr.push_back(rho.matrix()(r, c).real());
      ii.push_back(rho.matrix()(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  json doc{{"dim", rho.dim()}};
  if (dims) doc["dims"] = {dims->first, dims->second};
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) throw IoError("output path is empty");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

void save_state(const std::string& path, const DensityMatrix& rho, std::optional<std::pair<int, int>> dims) {
  write_text(path, state_to_json(rho, dims).dump(2) + "\n");
}

std::string fringes_to_csv(const FringeData& fringes) {
  std::vector<FringePoint> pts = fringes.points;
  std::stable_sort(pts.begin(), pts.end(), [](const FringePoint& a, const FringePoint& b) { return a.phase < b.phase; });
  std::string out = "phase_rad,p0,shots\n";
  char buf[128];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%lld\n", p.phase, p.p0, p.shots);
    out += buf;
  }
  return out;
}

void write_fringes(const FringeData& fringes, const std::string& path) {
  write_text(path, fringes_to_csv(fringes));
}

std::string file_digest(const std::string& path) {
  const std::string data = read_file(path);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw IoError("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

json visibility_to_json(const VisibilityEstimate& v) {
  return {{"v", v.v},
          {"alpha", v.alpha},
          {"stderr_v", v.stderr_v},
          {"re", v.expectation.real()},
          {"im", v.expectation.imag()},
          {"stderr_re", v.stderr_re}};
}

namespace {

json vector_to_json(const Eigen::VectorXcd& v) {
  json re = json::array(), im = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    re.push_back(v(k).real());
    im.push_back(v(k).imag());
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace

json discord_report_to_json(const DiscordReport& r, double threshold) {
  json trace = json::array();
  for (const auto& pt : r.trace) trace.push_back({{"start", pt.start}, {"params", pt.params}, {"q", pt.q}});
  return {{"best_q", r.best_q},
          {"verdict", to_string(r.verdict)},
          {"threshold", threshold},
          {"best_params", r.best_params},
          {"best_projectors", {vector_to_json(r.best_vector_1), vector_to_json(r.best_vector_2)}},
          {"evaluations", r.evaluations},
          {"grid_best_q", r.grid_best_q},
          {"trace", trace}};
}

}  // namespace qness

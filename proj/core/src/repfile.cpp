#include "specrig/repfile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace specrig {

namespace {

using nlohmann::json;

Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw DomainError("rational entries must be strings \"p/q\" or integers");
}

QMatrix json_matrix(const json& rows) {
  if (!rows.is_array() || rows.empty()) throw DomainError("matrix must be a nonempty array");
  QMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != m.cols())
      throw DomainError("matrix rows must have equal length");
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = json_rational(rows[i][j]);
  }
  return m;
}

QVector json_vector(const json& entries) {
  if (!entries.is_array()) throw DomainError("translation must be an array");
  QVector v(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) v[i] = json_rational(entries[i]);
  return v;
}

}  // namespace

RepresentationSpec parse_representation(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("representation file is not valid JSON: ") + e.what());
  }
  if (!doc.contains("ambient") || !doc.contains("generators"))
    throw DomainError("representation file needs 'ambient' and 'generators'");

  const json& amb = doc["ambient"];
  std::string kind = amb.value("kind", "");
  long n = amb.value("n", 0L);
  AmbientPtr ambient;
  if (kind == "sl")
    ambient = AmbientGroup::special_linear(n);
  else if (kind == "affine")
    ambient = AmbientGroup::affine(n);
  else
    throw DomainError("ambient.kind must be 'sl' or 'affine'");

  std::vector<std::pair<std::string, QMatrix>> gens;
  for (const json& g : doc["generators"]) {
    if (!g.contains("name") || !g.contains("matrix"))
      throw DomainError("each generator needs 'name' and 'matrix'");
    std::string name = g["name"].get<std::string>();
    QMatrix m = json_matrix(g["matrix"]);
    if (kind == "affine") {
      if (!g.contains("translation"))
        throw DomainError("affine generators need 'translation'");
      AffineElement e(std::move(m), json_vector(g["translation"]));
      gens.emplace_back(std::move(name), affine_embed_matrix(e));
    } else {
      gens.emplace_back(std::move(name), std::move(m));
    }
  }

  bool symmetric = doc.value("symmetric_closure", true);
  RepresentationSpec rep(ambient, std::move(gens), symmetric);
  if (doc.contains("invariant_form")) rep.invariant_form = json_matrix(doc["invariant_form"]);
  rep.zariski_dense_asserted = doc.value("zariski_dense", false);
  return rep;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RepresentationSpec load_representation(const std::string& path) {
  return parse_representation(read_file(path));
}

}  // namespace specrig

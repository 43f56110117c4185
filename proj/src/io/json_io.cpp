#include "tropmod/io/json_io.hpp"

#include "tropmod/error.hpp"
#include "tropmod/graphs/graph_io.hpp"

namespace tropmod {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error("bad_json", std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw Error("bad_json", std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) throw Error("bad_json", std::string(what) + " must be an array");
  return j;
}

template <typename T, typename F>
Matrix<T> matrix_from_json(const json& j, F&& entry) {
  const json& rows = array(j, "matrix");
  std::vector<std::vector<T>> out;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    array(row, "matrix row");
    if (!out.empty() && row.size() != cols) throw Error("bad_json", "matrix rows differ in length");
    cols = row.size();
    std::vector<T> r;
    for (const auto& x : row) r.push_back(entry(x));
    out.push_back(std::move(r));
  }
  return Matrix<T>::from_rows(out, cols);
}

}  // namespace

json to_json(const Rational& x) { return to_string(x); }
json to_json(const Integer& x) { return to_string(x); }

json to_json(const RatVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const RatMatrix& m) {
  json out = json::array();
  for (const auto& row : m.to_rows()) out.push_back(to_json(row));
  return out;
}

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (const auto& row : m.to_rows()) out.push_back(to_json(row));
  return out;
}

json to_json(const QuadForm& q) { return to_json(q.matrix()); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw Error("bad_json", "expected a rational string or an integer, got " + j.dump());
}

Integer integer_from_json(const json& j) {
  const Rational x = rational_from_json(j);
  if (x.get_den() != 1) throw Error("bad_json", "expected an integer, got " + j.dump());
  return x.get_num();
}

RatVector rat_vector_from_json(const json& j) {
  RatVector v;
  for (const auto& x : array(j, "vector")) v.push_back(rational_from_json(x));
  return v;
}

IntVector int_vector_from_json(const json& j) {
  IntVector v;
  for (const auto& x : array(j, "vector")) v.push_back(integer_from_json(x));
  return v;
}

RatMatrix rat_matrix_from_json(const json& j) { return matrix_from_json<Rational>(j, rational_from_json); }
IntMatrix int_matrix_from_json(const json& j) { return matrix_from_json<Integer>(j, integer_from_json); }

QuadForm form_from_json(const json& j) { return QuadForm(rat_matrix_from_json(j)); }

json cone_to_json(const IdealCone& c) {
  json rays = json::array(), removed = json::array();
  for (const auto& r : c.rays()) rays.push_back(to_json(r));
  for (FaceMask m : c.removed_faces()) {
    json face = json::array();
    for (std::size_t i = 0; i < c.num_rays(); ++i)
      if (m >> i & 1) face.push_back(i);
    removed.push_back(face);
  }
  return {{"ambient_dim", c.ambient_dim()}, {"rays", rays}, {"removed", removed}};
}

IdealCone cone_from_json(const json& j) {
  const int dim = int_field(j, "ambient_dim");
  if (dim < 0) throw Error("bad_json", "ambient_dim must be nonnegative");
  std::vector<IntVector> rays;
  for (const auto& r : array(field(j, "rays"), "rays")) rays.push_back(int_vector_from_json(r));
  std::vector<FaceMask> removed;
  if (j.contains("removed"))
    for (const auto& face : array(j["removed"], "removed")) {
      FaceMask m = 0;
      for (const auto& i : array(face, "removed face")) {
        if (!i.is_number_integer() || i.get<long long>() < 0 || i.get<std::size_t>() >= rays.size())
          throw Error("bad_json", "removed face refers to a missing ray");
        m |= FaceMask{1} << i.get<std::size_t>();
      }
      removed.push_back(m);
    }
  return IdealCone::make(rays, static_cast<std::size_t>(dim), removed);
}

json fan_to_json(const StackyFan& f) {
  json cells = json::array(), maps = json::array();
  for (const auto& c : f.cells) cells.push_back({{"label", c.label}, {"cone", cone_to_json(c.cone)}});
  for (const auto& m : f.maps)
    maps.push_back({{"source", m.source}, {"target", m.target}, {"matrix", to_json(m.matrix)}});
  return {{"cells", cells}, {"maps", maps}};
}

StackyFan fan_from_json(const json& j) {
  StackyFan f;
  for (const auto& c : array(field(j, "cells"), "cells")) {
    const json& label = field(c, "label");
    if (!label.is_string()) throw Error("bad_json", "cell label must be a string");
    f.add_cell(label.get<std::string>(), cone_from_json(field(c, "cone")));
  }
  const int n = static_cast<int>(f.num_cells());
  for (const auto& m : array(field(j, "maps"), "maps")) {
    const int s = int_field(m, "source"), t = int_field(m, "target");
    if (s < 0 || s >= n || t < 0 || t >= n) throw Error("bad_json", "face map refers to a missing cell");
    f.add_map(s, t, int_matrix_from_json(field(m, "matrix")));
  }
  return f;
}

json action_to_json(const AdmissibleAction& a) {
  json moves = json::array();
  for (const auto& m : a.moves)
    moves.push_back({{"generator", m.generator}, {"source", m.source}, {"target", m.target}, {"matrix", to_json(m.matrix)}});
  return {{"generators", a.num_generators}, {"moves", moves}};
}

AdmissibleAction action_from_json(const json& j) {
  AdmissibleAction a;
  const int gens = int_field(j, "generators");
  if (gens < 0) throw Error("bad_json", "generators must be nonnegative");
  a.num_generators = static_cast<std::size_t>(gens);
  for (const auto& m : array(field(j, "moves"), "moves")) {
    ActionMove move{int_field(m, "generator"), int_field(m, "source"), int_field(m, "target"),
                    int_matrix_from_json(field(m, "matrix"))};
    if (move.generator < 0 || move.generator >= gens) throw Error("bad_json", "move uses an unknown generator");
    a.moves.push_back(std::move(move));
  }
  return a;
}

json catalogue_to_json(const Catalogue& c) {
  json classes = json::array(), covers = json::array();
  for (std::size_t i = 0; i < c.size(); ++i)
    classes.push_back({{"index", i},
                       {"key", c.keys[i]},
                       {"dim", c.graphs[i].num_edges()},
                       {"pure", c.graphs[i].total_weight() == 0},
                       {"graph", graph_to_json(c.graphs[i])}});
  for (auto [a, b] : covering_relations(c)) covers.push_back({a, b});
  return {{"genus", c.genus}, {"classes", classes}, {"covers", covers}};
}

}  // namespace tropmod

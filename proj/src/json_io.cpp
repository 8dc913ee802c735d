#include "minkval/json_io.hpp"

#include <fstream>

namespace minkval {

Json to_json(const Vec& v) {
  Json a = Json::array();
  for (int k = 0; k < v.size(); ++k) a.push_back(v(k));
  return a;
}

Vec vec_from_json(const Json& j) {
  Vec v(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) v(k) = j[k].get<double>();
  return v;
}

Json body_to_json(const BodyHandle& body) {
  return std::visit(
      [](const auto& b) -> Json {
        using T = std::decay_t<decltype(b)>;
        Json j;
        if constexpr (std::is_same_v<T, Polytope>) {
          j["type"] = "polytope";
          j["dim"] = b.n;
          Json verts = Json::array();
          for (const auto& v : b.vertices) verts.push_back(to_json(v));
          j["vertices"] = verts;
        } else if constexpr (std::is_same_v<T, Ball>) {
          j["type"] = "ball";
          j["center"] = to_json(b.center);
          j["radius"] = b.radius;
        } else {
          j["type"] = "support_body";
          j["grid"] = grid_to_json(*b.h.grid);
          j["values"] = b.h.values;
        }
        return j;
      },
      body);
}

BodyHandle body_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "polytope") {
    int n = j.at("dim").get<int>();
    std::vector<Vec> verts;
    for (const auto& jv : j.at("vertices")) verts.push_back(vec_from_json(jv));
    return Polytope(n, std::move(verts));
  }
  if (type == "ball") {
    return Ball(vec_from_json(j.at("center")), j.at("radius").get<double>());
  }
  if (type == "support_body") {
    auto grid = grid_from_json(j.at("grid"));
    return SupportBody{SphericalFunction(grid, j.at("values").get<std::vector<double>>())};
  }
  throw InputError("body_from_json: unknown type " + type);
}

Json grid_to_json(const SphereGrid& grid) {
  Json j;
  j["dim"] = grid.dim();
  Json nodes = Json::array();
  for (const auto& u : grid.nodes()) nodes.push_back(to_json(u));
  j["nodes"] = nodes;
  Json weights = Json::array();
  for (int k = 0; k < grid.size(); ++k) weights.push_back(grid.weight(k));
  j["weights"] = weights;
  return j;
}

SphereGridPtr grid_from_json(const Json& j) {
  int n = j.at("dim").get<int>();
  std::vector<Vec> nodes;
  for (const auto& jn : j.at("nodes")) nodes.push_back(vec_from_json(jn));
  return std::make_shared<SphereGrid>(n, std::move(nodes));
}

Json spherical_function_to_json(const SphericalFunction& f) {
  Json j;
  j["grid_id"] = f.grid->content_id();
  j["values"] = f.values;
  return j;
}

Json grassmann_to_json(const GrassmannSample& s) {
  Json j;
  j["n"] = s.n;
  j["i"] = s.i;
  Json frames = Json::array();
  for (const auto& e : s.subspaces) {
    Subspace c = canonicalize(e);
    Json frame = Json::array();
    for (int r = 0; r < c.n; ++r) {
      Json row = Json::array();
      for (int col = 0; col < c.i; ++col) row.push_back(c.frame(r, col));
      frame.push_back(row);
    }
    frames.push_back(frame);
  }
  j["frames"] = frames;
  j["weights"] = s.weights;
  return j;
}

GrassmannSample grassmann_from_json(const Json& j) {
  GrassmannSample s;
  s.n = j.at("n").get<int>();
  s.i = j.at("i").get<int>();
  for (const auto& jf : j.at("frames")) {
    Mat frame(s.n, s.i);
    for (int r = 0; r < s.n; ++r)
      for (int c = 0; c < s.i; ++c) frame(r, c) = jf[r][c].get<double>();
    s.subspaces.emplace_back(s.n, s.i, frame);
  }
  s.weights = j.at("weights").get<std::vector<double>>();
  if (s.weights.size() != s.subspaces.size()) throw InputError("grassmann_from_json: weight count mismatch");
  return s;
}

Json measure_to_json(const AtomicMeasure& m) {
  Json j;
  j["dim"] = m.n;
  if (!m.label.empty()) j["label"] = m.label;
  Json atoms = Json::array();
  for (const auto& a : m.atoms) {
    Json ja;
    ja["dir"] = to_json(a.dir);
    ja["w"] = a.weight;
    atoms.push_back(ja);
  }
  j["atoms"] = atoms;
  return j;
}

AtomicMeasure measure_from_json(const Json& j) {
  AtomicMeasure m;
  m.n = j.at("dim").get<int>();
  if (j.contains("label")) m.label = j["label"].get<std::string>();
  for (const auto& ja : j.at("atoms")) m.atoms.push_back({vec_from_json(ja.at("dir")), ja.at("w").get<double>()});
  return m;
}

MinkowskiValuation operator_from_json(const Json& j, int n) {
  const std::string op = j.at("op").get<std::string>();
  if (op == "pi") return ProjectionBodyOp{};
  if (op == "pi_i") return ProjectionBodyIOp{j.at("i").get<int>()};
  if (op == "difference") return DifferenceBodyOp{};
  if (op == "lambda_i") return LambdaOp{j.at("i").get<int>()};
  if (op == "mean_section_even")
    return MeanSectionEvenOp{j.at("i").get<int>(), j.value("c", 1.0)};
  if (op == "crofton") {
    CroftonMeasure sigma;
    sigma.sample = grassmann_from_json(load_json_file(j.at("sample_file").get<std::string>()));
    sigma.symmetrize = j.value("symmetrize", true);
    if (sigma.sample.n != n) throw InputError("operator_from_json: crofton sample dimension mismatch");
    return FromCroftonOp{std::move(sigma)};
  }
  throw InputError("operator_from_json: unknown op " + op);
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace minkval

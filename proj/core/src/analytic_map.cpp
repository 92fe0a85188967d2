#include "adisk/analytic_map.hpp"

#include <cmath>
#include <stdexcept>
#include <variant>

#include <json.hpp>

namespace adisk {

namespace {

constexpr double kEvalTol = 1e-12;

void check_unit_disk_param(Cx a, const char* who) {
  if (std::abs(a) >= 1.0)
    throw std::invalid_argument(std::string(who) + ": parameter must satisfy |a| < 1");
}

}  // namespace

Cx moebius_transform(Cx a, Cx zeta) {
  check_unit_disk_param(a, "moebius_transform");
  return (zeta + a) / (1.0 + std::conj(a) * zeta);
}

Cx blaschke_product(const std::vector<Cx>& zeros, Cx zeta) {
  Cx b(1.0, 0.0);
  for (Cx a : zeros) {
    check_unit_disk_param(a, "blaschke_product");
    b *= (zeta - a) / (1.0 - std::conj(a) * zeta);
  }
  return b;
}

Cx strip_exp_point(double r, double alpha, Cx zeta) {
  if (r < 1e-12 || r >= 1.0)
    throw std::invalid_argument("strip_exp: ring radius must lie in [1e-12, 1)");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("strip_exp: alpha must lie in (0, 1)");
  const double t = kPi * alpha;
  const double c = std::cos(t) / (1.0 + std::sin(t));
  const Cx i(0.0, 1.0);
  Cx v = -i * ((zeta - c) / (1.0 - c * zeta));
  // The prime ends of the strip sit at v = +-1; grid points landing there
  // exactly are nudged inward so the evaluation stays finite.
  if (std::abs(1.0 - v) < 1e-13 || std::abs(1.0 + v) < 1e-13) v *= 1.0 - 1e-12;
  const double lr = std::log(r);
  const Cx eta = std::log((1.0 + v) / (1.0 - v));
  const Cx xi = 0.5 * lr + (-lr / kPi) * (i * eta);
  return std::exp(xi);
}

// ---------------------------------------------------------------------------
// Expression tree
// ---------------------------------------------------------------------------

struct PolyNode {
  std::vector<std::vector<Cx>> coeffs;  // per coordinate, c_0..c_d
};
struct MoebiusNode {
  Cx a;
  std::shared_ptr<const AnalyticMap::Node> child;
};
struct BlaschkeNode {
  std::vector<Cx> zeros;
  std::shared_ptr<const AnalyticMap::Node> child;
};
struct AnnulusSumNode {
  std::shared_ptr<const AnalyticMap::Node> f, g;
  double r;
  Point center;
};
struct StripExpNode {
  double r, alpha;
  std::shared_ptr<const AnalyticMap::Node> child;
};

struct AnalyticMap::Node {
  std::variant<PolyNode, MoebiusNode, BlaschkeNode, AnnulusSumNode, StripExpNode> v;
  int dim;
};

namespace {

using NodePtr = std::shared_ptr<const AnalyticMap::Node>;

Point eval_node(const AnalyticMap::Node& node, Cx zeta);

Point eval_poly(const PolyNode& p, Cx zeta) {
  Point out(p.coeffs.size());
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
    const auto& c = p.coeffs[k];
    Cx acc(0.0, 0.0);
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * zeta + c[j];
    out[k] = acc;
  }
  return out;
}

Point eval_node(const AnalyticMap::Node& node, Cx zeta) {
  return std::visit(
      [&](const auto& n) -> Point {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, PolyNode>) {
          return eval_poly(n, zeta);
        } else if constexpr (std::is_same_v<T, MoebiusNode>) {
          return eval_node(*n.child, moebius_transform(n.a, zeta));
        } else if constexpr (std::is_same_v<T, BlaschkeNode>) {
          return eval_node(*n.child, blaschke_product(n.zeros, zeta));
        } else if constexpr (std::is_same_v<T, AnnulusSumNode>) {
          if (std::abs(zeta) < n.r * (1.0 - 1e-9))
            throw std::domain_error("annulus_sum: point below the inner ring radius");
          Point a = eval_node(*n.f, zeta);
          Point b = eval_node(*n.g, n.r / zeta);
          for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k] - n.center[k];
          return a;
        } else {
          return eval_node(*n.child, strip_exp_point(n.r, n.alpha, zeta));
        }
      },
      node.v);
}

NodePtr make_node(AnalyticMap::Node&& n) {
  return std::make_shared<const AnalyticMap::Node>(std::move(n));
}

}  // namespace

AnalyticMap::AnalyticMap(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

AnalyticMap AnalyticMap::polynomial(std::vector<std::vector<Cx>> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial: needs n >= 1 coordinates");
  for (auto& c : coeffs)
    if (c.empty()) c.push_back(Cx(0.0, 0.0));
  int n = static_cast<int>(coeffs.size());
  return AnalyticMap(make_node({PolyNode{std::move(coeffs)}, n}));
}

AnalyticMap AnalyticMap::constant(Point c) {
  std::vector<std::vector<Cx>> coeffs(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) coeffs[k] = {c[k]};
  return polynomial(std::move(coeffs));
}

AnalyticMap AnalyticMap::identity() {
  return polynomial({{Cx(0.0, 0.0), Cx(1.0, 0.0)}});
}

AnalyticMap AnalyticMap::precompose_moebius(Cx a) const {
  check_unit_disk_param(a, "precompose_moebius");
  return AnalyticMap(make_node({MoebiusNode{a, root_}, dim()}));
}

AnalyticMap AnalyticMap::precompose_blaschke(std::vector<Cx> zeros) const {
  for (Cx a : zeros) check_unit_disk_param(a, "precompose_blaschke");
  return AnalyticMap(make_node({BlaschkeNode{std::move(zeros), root_}, dim()}));
}

AnalyticMap AnalyticMap::annulus_sum(AnalyticMap f, AnalyticMap g, double r,
                                     Point center) {
  if (r <= 0.0 || r >= 1.0)
    throw std::invalid_argument("annulus_sum: ring radius must lie in (0, 1)");
  if (f.dim() != g.dim() || static_cast<int>(center.size()) != f.dim())
    throw std::invalid_argument("annulus_sum: dimension mismatch");
  int n = f.dim();
  return AnalyticMap(make_node({AnnulusSumNode{f.root_, g.root_, r, std::move(center)}, n}));
}

AnalyticMap AnalyticMap::strip_exp(AnalyticMap ring_map, double r, double alpha) {
  if (r < 1e-12 || r >= 1.0)
    throw std::invalid_argument("strip_exp: ring radius must lie in [1e-12, 1)");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw std::invalid_argument("strip_exp: alpha must lie in (0, 1)");
  int n = ring_map.dim();
  return AnalyticMap(make_node({StripExpNode{r, alpha, ring_map.root_}, n}));
}

Point AnalyticMap::eval(Cx zeta) const {
  if (std::abs(zeta) > 1.0 + kEvalTol)
    throw std::domain_error("AnalyticMap::eval: |zeta| exceeds the closed unit disk");
  return eval_node(*root_, zeta);
}

int AnalyticMap::dim() const { return root_->dim; }

bool AnalyticMap::is_polynomial() const {
  return std::holds_alternative<PolyNode>(root_->v);
}

const std::vector<std::vector<Cx>>& AnalyticMap::poly_coeffs() const {
  if (!is_polynomial())
    throw std::logic_error("poly_coeffs: map is not a bare polynomial");
  return std::get<PolyNode>(root_->v).coeffs;
}

Cx eval1(const AnalyticMap& f, Cx zeta) {
  if (f.dim() != 1)
    throw std::invalid_argument("eval1: scalar-valued map required");
  return f.eval(zeta)[0];
}

double sup_norm(const AnalyticMap& f, const BoundaryGrid& grid) {
  if (grid.n < 256)
    throw std::invalid_argument("sup_norm: grid must have at least 256 samples");
  double best = 0.0;
  for (int k = 0; k < grid.n; ++k) {
    double v = norm(f.eval(grid.point(k)));
    if (v > best) best = v;
  }
  return best;
}

double sup_norm_auto(const AnalyticMap& f) {
  int n = 4096;
  double prev = sup_norm(f, BoundaryGrid(n));
  while (n < (1 << 17)) {
    n *= 2;
    double cur = sup_norm(f, BoundaryGrid(n));
    if (cur - prev < 1e-8) return cur;
    prev = cur;
  }
  return prev;
}

Cx derivative_at(const AnalyticMap& f, Cx zeta) {
  if (f.dim() != 1)
    throw std::invalid_argument("derivative_at: scalar-valued map required");
  if (f.is_polynomial()) {
    const auto& c = f.poly_coeffs()[0];
    Cx acc(0.0, 0.0);
    for (std::size_t j = c.size(); j-- > 1;)
      acc = acc * zeta + static_cast<double>(j) * c[j];
    return acc;
  }
  const double h = 1e-6 * std::max(1.0, std::abs(zeta));
  return (eval1(f, zeta + h) - eval1(f, zeta - h)) / (2.0 * h);
}

BlochResult bloch_norm_scan(const std::function<Cx(Cx)>& u, const BlochGrid& grid) {
  BlochResult best;
  for (int i = 0; i < grid.radii; ++i) {
    const double r = grid.max_radius * static_cast<double>(i) / (grid.radii - 1);
    const double w = 1.0 - r * r;
    const int na = (i == 0) ? 1 : grid.angles;
    for (int a = 0; a < na; ++a) {
      const Cx z = std::polar(r, kTwoPi * a / grid.angles);
      const double h = 1e-6 * std::max(1.0, std::abs(z));
      const Cx du = (u(z + h) - u(z - h)) / (2.0 * h);
      const double v = std::abs(du) * w;
      if (v > best.value) {
        best.value = v;
        best.witness = z;
      }
    }
  }
  return best;
}

BlochResult bloch_norm_scan(const AnalyticMap& u, const BlochGrid& grid) {
  if (u.dim() != 1)
    throw std::invalid_argument("bloch_norm: scalar-valued map required");
  BlochResult best;
  for (int i = 0; i < grid.radii; ++i) {
    const double r = grid.max_radius * static_cast<double>(i) / (grid.radii - 1);
    const double w = 1.0 - r * r;
    const int na = (i == 0) ? 1 : grid.angles;
    for (int a = 0; a < na; ++a) {
      const Cx z = std::polar(r, kTwoPi * a / grid.angles);
      const double v = std::abs(derivative_at(u, z)) * w;
      if (v > best.value) {
        best.value = v;
        best.witness = z;
      }
    }
  }
  return best;
}

double bloch_norm(const AnalyticMap& u, const BlochGrid& grid) {
  return bloch_norm_scan(u, grid).value;
}

// ---------------------------------------------------------------------------
// JSON serialization. Node tags and field names are fixed by
// schemas/analytic_map.schema.json.
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

json cx_to_json(Cx c) { return json::array({c.real(), c.imag()}); }

Cx cx_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument("AnalyticMap: complex values must be [re, im]");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

json node_to_json(const AnalyticMap::Node& node) {
  return std::visit(
      [&](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        json j;
        if constexpr (std::is_same_v<T, PolyNode>) {
          j["node"] = "poly";
          json coords = json::array();
          for (const auto& c : n.coeffs) {
            json cc = json::array();
            for (Cx v : c) cc.push_back(cx_to_json(v));
            coords.push_back(cc);
          }
          j["coeffs"] = coords;
        } else if constexpr (std::is_same_v<T, MoebiusNode>) {
          j["node"] = "moebius";
          j["a"] = cx_to_json(n.a);
          j["child"] = node_to_json(*n.child);
        } else if constexpr (std::is_same_v<T, BlaschkeNode>) {
          j["node"] = "blaschke";
          json zs = json::array();
          for (Cx z : n.zeros) zs.push_back(cx_to_json(z));
          j["zeros"] = zs;
          j["child"] = node_to_json(*n.child);
        } else if constexpr (std::is_same_v<T, AnnulusSumNode>) {
          j["node"] = "annulus_sum";
          j["r"] = n.r;
          json ctr = json::array();
          for (Cx v : n.center) ctr.push_back(cx_to_json(v));
          j["center"] = ctr;
          j["f"] = node_to_json(*n.f);
          j["g"] = node_to_json(*n.g);
        } else {
          j["node"] = "strip_exp";
          j["r"] = n.r;
          j["alpha"] = n.alpha;
          j["child"] = node_to_json(*n.child);
        }
        return j;
      },
      node.v);
}

AnalyticMap map_from_json(const json& j);

AnalyticMap child_from_json(const json& j, const char* field) {
  if (!j.contains(field))
    throw std::invalid_argument(std::string("AnalyticMap: missing field ") + field);
  return map_from_json(j.at(field));
}

AnalyticMap map_from_json(const json& j) {
  const std::string tag = j.at("node").get<std::string>();
  if (tag == "poly") {
    std::vector<std::vector<Cx>> coeffs;
    for (const auto& coord : j.at("coeffs")) {
      std::vector<Cx> c;
      for (const auto& v : coord) c.push_back(cx_from_json(v));
      coeffs.push_back(std::move(c));
    }
    return AnalyticMap::polynomial(std::move(coeffs));
  }
  if (tag == "moebius")
    return child_from_json(j, "child").precompose_moebius(cx_from_json(j.at("a")));
  if (tag == "blaschke") {
    std::vector<Cx> zeros;
    for (const auto& v : j.at("zeros")) zeros.push_back(cx_from_json(v));
    return child_from_json(j, "child").precompose_blaschke(std::move(zeros));
  }
  if (tag == "annulus_sum") {
    Point center;
    for (const auto& v : j.at("center")) center.push_back(cx_from_json(v));
    return AnalyticMap::annulus_sum(child_from_json(j, "f"), child_from_json(j, "g"),
                                    j.at("r").get<double>(), std::move(center));
  }
  if (tag == "strip_exp")
    return AnalyticMap::strip_exp(child_from_json(j, "child"), j.at("r").get<double>(),
                                  j.at("alpha").get<double>());
  throw std::invalid_argument("AnalyticMap: unknown node tag '" + tag + "'");
}

}  // namespace

std::string AnalyticMap::to_json_string(int indent) const {
  return node_to_json(*root_).dump(indent);
}

AnalyticMap AnalyticMap::from_json_string(const std::string& text) {
  return map_from_json(json::parse(text));
}

}  // namespace adisk

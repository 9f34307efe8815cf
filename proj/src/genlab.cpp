#include "afg/genlab.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "afg/census.hpp"

namespace afg {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) fail(ErrorKind::InvalidArgument, "unterminated quote in catalog line: " + line);
  cells.push_back(cur);
  return cells;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

Integer parse_integer(const std::string& cell, const std::string& column) {
  if (cell.empty() || cell.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorKind::InvalidArgument, "column " + column + " is not a non-negative integer: '" + cell + "'");
  return Integer(cell);
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

const char* kHeader = "label,index,class_count,intersect_x,intersect_y,intersect_K,generators_file,provenance";

}  // namespace

Catalog parse_catalog(const std::string& text, const std::string& base_dir) {
  std::istringstream in(text);
  std::string line;
  Catalog out;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    const auto cells = split_csv_line(line);
    if (!header) {
      std::string joined;
      for (std::size_t i = 0; i < cells.size(); ++i) joined += (i ? "," : "") + trim(cells[i]);
      if (joined != kHeader) fail(ErrorKind::InvalidArgument, std::string("catalog header must be ") + kHeader);
      header = true;
      continue;
    }
    if (cells.size() != 8)
      fail(ErrorKind::InvalidArgument, "catalog line " + std::to_string(lineno) + " has " +
                                           std::to_string(cells.size()) + " fields, expected 8");
    SubgroupCatalogEntry e;
    e.label = trim(cells[0]);
    e.index = parse_integer(trim(cells[1]), "index");
    e.class_count = parse_integer(trim(cells[2]), "class_count");
    const auto opt = [&](std::size_t i, const char* name) -> std::optional<Integer> {
      const auto c = trim(cells[i]);
      if (c.empty()) return std::nullopt;
      return parse_integer(c, name);
    };
    e.intersect_x = opt(3, "intersect_x");
    e.intersect_y = opt(4, "intersect_y");
    e.intersect_K = opt(5, "intersect_K");
    const auto gf = trim(cells[6]);
    if (!gf.empty()) e.generators_file = (std::filesystem::path(base_dir) / gf).string();
    e.provenance = trim(cells[7]);
    if (e.index < 2) fail(ErrorKind::InvalidArgument, "catalog entry " + e.label + " has index below 2");
    if (e.class_count < 1) fail(ErrorKind::InvalidArgument, "catalog entry " + e.label + " has class_count 0");
    out.push_back(std::move(e));
  }
  if (!header) fail(ErrorKind::InvalidArgument, "catalog lacks a header line");
  return out;
}

Catalog read_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::MissingData, "cannot open catalog " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string write_catalog(const Catalog& catalog) {
  std::string out = std::string(kHeader) + "\n";
  const auto opt = [](const std::optional<Integer>& v) { return v ? to_string(*v) : std::string(); };
  for (const auto& e : catalog)
    out += quote(e.label) + "," + to_string(e.index) + "," + to_string(e.class_count) + "," + opt(e.intersect_x) +
           "," + opt(e.intersect_y) + "," + opt(e.intersect_K) + "," + quote(e.generators_file) + "," +
           quote(e.provenance) + "\n";
  return out;
}

bool generates(const std::vector<Matrix>& elements, const GroupAtlas& atlas) {
  if (elements.empty()) return atlas.order() == 1;
  for (const auto& g : elements)
    if (!atlas.contains(g)) fail(ErrorKind::InvalidArgument, "element is not in " + to_string(atlas.spec()));
  return matrix_chain(atlas.action(), elements, atlas.order()).order() == atlas.order();
}

bool generates(const Matrix& x, const Matrix& y, const GroupAtlas& atlas) { return generates({x, y}, atlas); }

std::uint64_t GenerationExperiment::successes() const {
  std::uint64_t s = 0;
  for (const auto& t : per_trial) s += t.generated;
  return s;
}

std::optional<double> GenerationExperiment::frequency() const {
  if (per_trial.empty()) return std::nullopt;
  return static_cast<double>(successes()) / static_cast<double>(per_trial.size());
}

std::vector<TrialResult> sample_generation(const GroupAtlas& atlas, const Matrix& x, const std::vector<Matrix>& y,
                                           std::uint64_t trials, std::uint64_t seed) {
  std::vector<TrialResult> out;
  out.reserve(trials);
  for (std::uint64_t i = 0; i < trials; ++i) {
    std::mt19937_64 rng(split_seed(seed, i));
    const Matrix g = atlas.random_element(rng);
    const Matrix h = atlas.random_element(rng);
    std::vector<Matrix> elems{conjugate(x, g)};
    for (const auto& yi : y) elems.push_back(conjugate(yi, h));
    TrialResult r;
    r.order_found = matrix_chain(atlas.action(), elems, atlas.order()).order();
    r.generated = r.order_found == atlas.order();
    out.push_back(std::move(r));
  }
  return out;
}

GenerationExperiment run_generation_experiment(const GroupAtlas& atlas, const TwoGroup& A, const TwoGroup& B,
                                               std::uint64_t trials, std::uint64_t seed) {
  if (B.order() <= 2)
    fail(ErrorKind::InvalidArgument, "B must contain an element of order 4 or a Klein four-subgroup");
  const auto ea = embed_almost_free(A, atlas.spec());
  const auto eb = embed_almost_free(B, atlas.spec());
  const auto xs = A.elements_of_order(2);
  const Matrix x = ea.image(xs.front());
  GenerationExperiment ex;
  ex.atlas = atlas.spec();
  ex.A = A.tag();
  ex.B = B.tag();
  ex.trials = trials;
  ex.seed = seed;
  std::vector<Matrix> y;
  const auto fours = B.elements_of_order(4);
  if (!fours.empty()) {
    y.push_back(eb.image(fours.front()));
  } else {
    const auto k = klein_subgroup(eb);
    y = {k.y1, k.y2};
    ex.klein = true;
  }
  ex.per_trial = sample_generation(atlas, x, y, trials, seed);
  return ex;
}

Rational criterion_sum(const Catalog& catalog, const Integer& x_class, const Integer& y_class, CriterionMode mode) {
  if (x_class < 1 || y_class < 1) fail(ErrorKind::InvalidArgument, "class sizes must be positive");
  Rational sum = 0;
  for (const auto& e : catalog) {
    const auto& iy = mode == CriterionMode::Klein ? e.intersect_K : e.intersect_y;
    if (!e.intersect_x || !iy)
      fail(ErrorKind::MissingData, "catalog entry " + e.label + " lacks intersection data for this mode");
    if (*e.intersect_x > x_class || *iy > y_class)
      fail(ErrorKind::InvalidArgument, "catalog entry " + e.label + " has an intersection larger than the class");
    sum += Rational(e.class_count * e.index) * Rational(*e.intersect_x, x_class) * Rational(*iy, y_class);
  }
  return sum;
}

Catalog parabolic_catalog(const GroupAtlas& atlas, const Matrix& x, const std::vector<Matrix>& y, const Caps& caps) {
  if (y.size() != 1 && y.size() != 2) fail(ErrorKind::InvalidArgument, "y must be one element or a Klein pair");
  const auto& form = atlas.form();
  const std::size_t top = form.kind() == FormKind::Zero ? form.n() - 1 : form.witt_index();
  Catalog out;
  for (std::size_t m = 1; m <= top; ++m) {
    const auto rx = fpr_check(x, atlas, m, caps);
    const auto ry = y.size() == 1 ? fpr_check(y[0], atlas, m, caps) : fpr_check(y[0], y[1], atlas, m, caps);
    SubgroupCatalogEntry e;
    e.label = "C1-parabolic-m" + std::to_string(m);
    e.index = rx.omega_size;
    e.intersect_x = rx.intersection;
    (y.size() == 1 ? e.intersect_y : e.intersect_K) = ry.intersection;
    e.provenance = rx.transitive ? "flagfix enumeration" : "flagfix enumeration; one of two orbits";
    out.push_back(std::move(e));
  }
  return out;
}

double zeta(const Catalog& catalog, double s) {
  if (!(s > 0)) fail(ErrorKind::InvalidArgument, "zeta needs s > 0");
  double z = 0;
  for (const auto& e : catalog)
    z += e.class_count.convert_to<double>() * std::exp(-s * std::log(e.index.convert_to<double>()));
  return z;
}

I2RatioReport i2_ratio_report(const std::string& label, const Integer& i2_M, const Integer& i2_G,
                              const Integer& index) {
  if (i2_G < 1) fail(ErrorKind::InvalidArgument, "G has no involutions");
  if (index < 1) fail(ErrorKind::InvalidArgument, "index must be positive");
  I2RatioReport r{label, i2_M, i2_G, index, Rational(i2_M, i2_G), 0, false};
  r.ratio_ok = r.ratio <= 1;
  if (index > 1 && i2_M > 0 && r.ratio != 1)
    r.exponent = (std::log(i2_M.convert_to<double>()) - std::log(i2_G.convert_to<double>())) /
                 -std::log(index.convert_to<double>());
  else if (i2_M == 0)
    r.exponent = INFINITY;
  return r;
}

I2RatioReport i2_ratio_report(const SubgroupCatalogEntry& entry, const GroupAtlas& atlas, const Caps& caps) {
  if (entry.generators_file.empty())
    fail(ErrorKind::MissingData, "catalog entry " + entry.label + " carries no generators file");
  std::ifstream in(entry.generators_file);
  if (!in) fail(ErrorKind::MissingData, "cannot open generators file " + entry.generators_file);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto gens = parse_matrix_list(ss.str());
  for (const auto& g : gens)
    if (!atlas.contains(g))
      fail(ErrorKind::InvalidArgument, "generator of " + entry.label + " is not in " + to_string(atlas.spec()));
  const Integer i2_M = count_order_elements(gens, 2, caps);
  const Integer i2_G = count_order_elements(PermGroup(atlas), 2, caps);
  return i2_ratio_report(entry.label, i2_M, i2_G, entry.index);
}

}  // namespace afg

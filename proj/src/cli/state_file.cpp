#include "ngcorr/cli.hpp"

#include "ngcorr/channels.hpp"
#include "ngcorr/errors.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace ngcorr::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

struct Field {
  std::string value;
  int line = 0;
};

class Reader {
 public:
  Reader(std::string name) : name_(std::move(name)) {}

  [[noreturn]] void fail(int line, const std::string& key, const std::string& msg) const {
    std::string where = name_;
    if (line > 0) where += ":" + std::to_string(line);
    if (!key.empty()) where += ": field '" + key + "'";
    throw BadSpec(where + ": " + msg);
  }

  double real(const std::string& key, const Field& f) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(f.value, &used);
      if (used == f.value.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    fail(f.line, key, "'" + f.value + "' is not a finite number");
  }

  int integer(const std::string& key, const std::string& text, int line) const {
    try {
      std::size_t used = 0;
      const int v = std::stoi(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    fail(line, key, "'" + text + "' is not an integer");
  }

  // "1.5", "-0.3i", "1+0.5i" or "1-2e-3i".
  std::complex<double> complex(const std::string& key, const std::string& text, int line) const {
    const std::string t = trim(text);
    if (t.empty()) fail(line, key, "empty number");
    try {
      std::size_t used = 0;
      if (t.back() == 'i') {
        const std::string body = t.substr(0, t.size() - 1);
        // The imaginary part starts at the last sign that is not an exponent sign.
        std::size_t split = std::string::npos;
        for (std::size_t k = body.size(); k-- > 1;)
          if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
          }
        if (split == std::string::npos) {
          const double im = std::stod(body, &used);
          if (used == body.size()) return {0.0, im};
        } else {
          const std::string re_s = body.substr(0, split), im_s = body.substr(split);
          const double re = std::stod(re_s, &used);
          if (used == re_s.size()) {
            const double im = std::stod(im_s, &used);
            if (used == im_s.size()) return {re, im};
          }
        }
      } else {
        const double re = std::stod(t, &used);
        if (used == t.size()) return {re, 0.0};
      }
    } catch (const std::exception&) {
    }
    fail(line, key, "'" + t + "' is not a number");
  }

 private:
  std::string name_;
};

// Keys each family reads besides family, cutoff and eta.
const std::map<Family, std::set<std::string>>& family_keys() {
  static const std::map<Family, std::set<std::string>> keys = {
      {Family::coherent, {"gamma"}},
      {Family::cat, {"gamma", "parity"}},
      {Family::ecs, {"gamma"}},
      {Family::pnes, {"coeffs", "levels"}},
      {Family::tmsv, {"r"}},
      {Family::cv_werner, {"r", "f"}},
      {Family::thermal, {"nbar"}},
      {Family::photon_correlated, {"nbar"}},
      {Family::vacuum, {"modes"}},
  };
  return keys;
}

}  // namespace

StateFile parse_state_file(std::istream& in, const std::string& name) {
  const Reader rd(name);
  std::map<std::string, Field> fields;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) rd.fail(line, "", "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) rd.fail(line, "", "missing key");
    if (value.empty()) rd.fail(line, key, "missing value");
    if (fields.count(key)) rd.fail(line, key, "given twice (first on line " + std::to_string(fields[key].line) + ")");
    fields[key] = Field{value, line};
  }

  if (!fields.count("family")) rd.fail(0, "family", "missing");
  StateFile out;
  StateSpec& spec = out.spec;
  try {
    spec.family = family_from_string(fields["family"].value);
  } catch (const BadSpec& e) {
    rd.fail(fields["family"].line, "family", e.what());
  }

  const auto& used = family_keys().at(spec.family);
  for (const auto& [key, f] : fields) {
    if (key == "family" || key == "cutoff" || key == "eta") continue;
    static const std::set<std::string> known = {"gamma", "parity", "coeffs", "levels", "r", "f", "nbar", "modes"};
    if (!known.count(key)) rd.fail(f.line, key, "unknown key");
    if (!used.count(key)) rd.fail(f.line, key, "not used by family " + to_string(spec.family));
  }

  if (fields.count("gamma")) spec.gamma = rd.complex("gamma", fields["gamma"].value, fields["gamma"].line);
  if (fields.count("parity")) {
    const Field& f = fields["parity"];
    if (f.value == "even" || f.value == "+1" || f.value == "1")
      spec.parity = 1;
    else if (f.value == "odd" || f.value == "-1")
      spec.parity = -1;
    else
      rd.fail(f.line, "parity", "expected even or odd");
  }
  if (fields.count("coeffs")) {
    const Field& f = fields["coeffs"];
    const auto items = split_list(f.value);
    double norm = 0.0;
    bool rest = false;
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (items[k] == "rest") {
        if (k + 1 != items.size()) rd.fail(f.line, "coeffs", "'rest' must be the last coefficient");
        rest = true;
        break;
      }
      spec.coeffs.push_back(rd.complex("coeffs", items[k], f.line));
      norm += std::norm(spec.coeffs.back());
    }
    if (rest) {
      if (norm > 1.0) rd.fail(f.line, "coeffs", "'rest' needs the other weights to sum to at most 1");
      spec.coeffs.emplace_back(std::sqrt(1.0 - norm), 0.0);
    }
  }
  if (fields.count("levels"))
    for (const auto& item : split_list(fields["levels"].value))
      spec.levels.push_back(rd.integer("levels", item, fields["levels"].line));
  if (fields.count("r")) spec.r = rd.real("r", fields["r"]);
  if (fields.count("f")) spec.f = rd.real("f", fields["f"]);
  if (fields.count("nbar")) spec.nbar = rd.real("nbar", fields["nbar"]);
  if (fields.count("modes")) spec.modes = rd.integer("modes", fields["modes"].value, fields["modes"].line);
  if (fields.count("cutoff")) {
    const Field& f = fields["cutoff"];
    const auto items = split_list(f.value);
    for (const auto& item : items) spec.cutoff.push_back(rd.integer("cutoff", item, f.line));
    const int m = family_modes(spec);
    if (spec.cutoff.size() == 1 && m > 1) spec.cutoff.assign(static_cast<std::size_t>(m), spec.cutoff[0]);
    if (static_cast<int>(spec.cutoff.size()) != m)
      rd.fail(f.line, "cutoff", "expected 1 or " + std::to_string(m) + " values");
  }
  if (fields.count("eta")) {
    out.eta = rd.real("eta", fields["eta"]);
    if (out.eta < 0.0 || out.eta > 1.0) rd.fail(fields["eta"].line, "eta", "must lie in [0, 1]");
  }
  return out;
}

StateFile load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadSpec(path + ": cannot open");
  return parse_state_file(in, path);
}

FockState build_state(const StateFile& file) {
  FockState s = make_state(file.spec);
  if (file.eta == 1.0) return s;
  std::vector<int> modes(static_cast<std::size_t>(s.modes()));
  for (int k = 0; k < s.modes(); ++k) modes[static_cast<std::size_t>(k)] = k;
  return apply_loss(s, file.eta, modes);
}

}  // namespace ngcorr::cli

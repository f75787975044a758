#include "crn/network.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace crn {

double InitialProfile::eval(double x) const {
  switch (kind) {
    case Kind::Const:
      return value;
    case Kind::Step:
      return x < x0 ? value : right;
    case Kind::Bump:
      return value + amplitude * std::cos(mode * std::numbers::pi * x);
  }
  return 0.0;
}

int ReactionNetwork::species_index(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (species[i] == name) return i;
  return -1;
}

double ReactionNetwork::rate(int target, int source) const {
  auto it = rates.find({source, target});
  return it == rates.end() ? 0.0 : it->second;
}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

double parse_float(const std::string& tok, int line_no) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line_no, "expected a number, got '" + tok + "'");
  return v;
}

int parse_int(const std::string& tok, int line_no) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line_no, "expected an integer, got '" + tok + "'");
  return v;
}

int require_species(const ReactionNetwork& net, const std::string& name, int line_no) {
  int idx = net.species_index(name);
  if (idx < 0) throw ParseError(line_no, "unknown species '" + name + "'");
  return idx;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // trim the mantissa when a shorter form round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

ReactionNetwork parse_network(std::string_view text) {
  ReactionNetwork net;
  std::vector<bool> diff_seen, init_seen;
  bool grid_seen = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& stmt = tok[0];

    if (stmt == "species") {
      if (tok.size() < 2) throw ParseError(line_no, "species statement needs at least one name");
      for (std::size_t k = 1; k < tok.size(); ++k) {
        if (!valid_name(tok[k])) throw ParseError(line_no, "invalid species name '" + tok[k] + "'");
        if (net.species_index(tok[k]) >= 0)
          throw ParseError(line_no, "duplicate species '" + tok[k] + "'");
        net.species.push_back(tok[k]);
        net.diffusions.push_back(0.0);
        net.profiles.push_back(InitialProfile{});
        diff_seen.push_back(false);
        init_seen.push_back(false);
      }
    } else if (stmt == "diff") {
      if (tok.size() != 3) throw ParseError(line_no, "expected: diff <name> <float>");
      int idx = require_species(net, tok[1], line_no);
      double d = parse_float(tok[2], line_no);
      if (d < 0) throw ParseError(line_no, "diffusion coefficient must be nonnegative");
      if (diff_seen[idx]) throw ParseError(line_no, "duplicate diff for '" + tok[1] + "'");
      diff_seen[idx] = true;
      net.diffusions[idx] = d;
    } else if (stmt == "rxn") {
      if (tok.size() != 5 || tok[2] != "->")
        throw ParseError(line_no, "expected: rxn <name> -> <name> <float>");
      int src = require_species(net, tok[1], line_no);
      int dst = require_species(net, tok[3], line_no);
      if (src == dst) throw ParseError(line_no, "self-reaction '" + tok[1] + " -> " + tok[3] + "'");
      double rate = parse_float(tok[4], line_no);
      if (rate < 0) throw ParseError(line_no, "negative rate");
      if (rate == 0) throw ParseError(line_no, "rate must be strictly positive (omit the line for no reaction)");
      if (net.rates.count({src, dst}))
        throw ParseError(line_no, "duplicate reaction " + tok[1] + " -> " + tok[3]);
      net.rates[{src, dst}] = rate;
    } else if (stmt == "init") {
      if (tok.size() < 3) throw ParseError(line_no, "expected: init <name> <profile> ...");
      int idx = require_species(net, tok[1], line_no);
      if (init_seen[idx]) throw ParseError(line_no, "duplicate init for '" + tok[1] + "'");
      init_seen[idx] = true;
      InitialProfile p;
      const std::string& kind = tok[2];
      if (kind == "const") {
        if (tok.size() != 4) throw ParseError(line_no, "expected: init <name> const <c>");
        p.kind = InitialProfile::Kind::Const;
        p.value = parse_float(tok[3], line_no);
        if (p.value < 0) throw ParseError(line_no, "initial concentration must be nonnegative");
      } else if (kind == "step") {
        if (tok.size() != 6) throw ParseError(line_no, "expected: init <name> step <cl> <cr> <x0>");
        p.kind = InitialProfile::Kind::Step;
        p.value = parse_float(tok[3], line_no);
        p.right = parse_float(tok[4], line_no);
        p.x0 = parse_float(tok[5], line_no);
        if (p.value < 0 || p.right < 0 || p.x0 < 0)
          throw ParseError(line_no, "step parameters must be nonnegative");
      } else if (kind == "bump") {
        if (tok.size() != 6) throw ParseError(line_no, "expected: init <name> bump <c> <amp> <mode>");
        p.kind = InitialProfile::Kind::Bump;
        p.value = parse_float(tok[3], line_no);
        p.amplitude = parse_float(tok[4], line_no);
        p.mode = parse_int(tok[5], line_no);
        if (p.value < 0) throw ParseError(line_no, "bump mean must be nonnegative");
        if (std::abs(p.amplitude) > p.value)
          throw ParseError(line_no, "bump amplitude must satisfy |amp| <= c");
        if (p.mode < 0) throw ParseError(line_no, "bump mode must be a nonnegative integer");
      } else {
        throw ParseError(line_no, "unknown profile kind '" + kind + "'");
      }
      net.profiles[idx] = p;
    } else if (stmt == "grid") {
      if (tok.size() != 2) throw ParseError(line_no, "expected: grid <n>");
      if (grid_seen) throw ParseError(line_no, "duplicate grid statement");
      grid_seen = true;
      net.grid_cells = parse_int(tok[1], line_no);
      if (net.grid_cells < 2) throw ParseError(line_no, "grid needs at least 2 cells");
    } else {
      throw ParseError(line_no, "unknown statement '" + stmt + "'");
    }
  }

  if (net.species.empty()) throw ParseError(0, "no species declared");

  // Discrete initial mass must be positive: evaluate on the network's grid.
  double mass = 0.0;
  double dx = 1.0 / net.grid_cells;
  for (const auto& p : net.profiles)
    for (int k = 0; k < net.grid_cells; ++k) mass += p.eval((k + 0.5) * dx) * dx;
  if (mass <= 0.0) throw ParseError(0, "zero initial mass: at least one species needs a nonzero profile");

  return net;
}

std::string to_dsl(const ReactionNetwork& net) {
  std::ostringstream out;
  out << "species";
  for (const auto& s : net.species) out << ' ' << s;
  out << '\n';
  out << "grid " << net.grid_cells << '\n';
  for (int i = 0; i < net.size(); ++i)
    out << "diff " << net.species[i] << ' ' << format_double(net.diffusions[i]) << '\n';
  for (const auto& [edge, rate] : net.rates)
    out << "rxn " << net.species[edge.first] << " -> " << net.species[edge.second] << ' '
        << format_double(rate) << '\n';
  for (int i = 0; i < net.size(); ++i) {
    const InitialProfile& p = net.profiles[i];
    out << "init " << net.species[i] << ' ';
    switch (p.kind) {
      case InitialProfile::Kind::Const:
        out << "const " << format_double(p.value);
        break;
      case InitialProfile::Kind::Step:
        out << "step " << format_double(p.value) << ' ' << format_double(p.right) << ' '
            << format_double(p.x0);
        break;
      case InitialProfile::Kind::Bump:
        out << "bump " << format_double(p.value) << ' ' << format_double(p.amplitude) << ' '
            << p.mode;
        break;
    }
    out << '\n';
  }
  return out.str();
}

ReactionMatrix build_reaction_matrix(const ReactionNetwork& net) {
  const int n = net.size();
  ReactionMatrix m;
  m.a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [edge, rate] : net.rates) m.a(edge.second, edge.first) = rate;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i)
      if (i != j) col += m.a(i, j);
    m.a(j, j) = -col;
  }
  return m;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string network_hash(const ReactionNetwork& net) { return fnv1a64_hex(to_dsl(net)); }

}  // namespace crn

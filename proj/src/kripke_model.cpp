#include <algorithm>
#include <cctype>
#include <sstream>

#include "fml2hol/kripke.hpp"

namespace fml2hol::kripke {

namespace {

std::string individual_name(int i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "e" + std::to_string(i + 1);
}

}  // namespace

KripkeModel KripkeModel::make(int num_worlds, int num_individuals) {
  KripkeModel m;
  for (int w = 0; w < num_worlds; ++w) m.worlds.push_back("w" + std::to_string(w + 1));
  for (int x = 0; x < num_individuals; ++x) m.universe.push_back(individual_name(x));
  m.rel.assign(num_worlds, std::vector<bool>(num_worlds, false));
  m.dom.assign(num_worlds, std::vector<bool>(num_individuals, true));
  return m;
}

std::size_t KripkeModel::tuple_index(std::span<const int> args) const {
  std::size_t idx = 0;
  for (int a : args) idx = idx * universe.size() + static_cast<std::size_t>(a);
  return idx;
}

std::size_t KripkeModel::tuple_count(int arity) const {
  std::size_t n = 1;
  for (int i = 0; i < arity; ++i) n *= universe.size();
  return n;
}

void KripkeModel::declare(const fml::Signature& signature) {
  for (const auto& p : signature.predicates)
    preds[p.name] = Predicate{p.arity, std::vector<std::vector<bool>>(
                                           worlds.size(), std::vector<bool>(tuple_count(p.arity)))};
  for (const auto& f : signature.functions)
    funcs[f.name] = Function{f.arity, std::vector<int>(tuple_count(f.arity), 0)};
  for (const auto& c : signature.constants) consts[c] = 0;
}

bool KripkeModel::holds(std::string_view pred, int world, std::span<const int> args) const {
  auto it = preds.find(pred);
  if (it == preds.end()) return false;
  if (it->second.arity != static_cast<int>(args.size()))
    throw EvalError(EvalError::Kind::ArityMismatch,
                    "predicate '" + std::string(pred) + "' has arity " +
                        std::to_string(it->second.arity) + " in the model");
  return it->second.extension[world][tuple_index(args)];
}

int KripkeModel::apply(std::string_view fn, std::span<const int> args) const {
  auto it = funcs.find(fn);
  if (it == funcs.end())
    throw EvalError(EvalError::Kind::UnknownSymbol,
                    "function '" + std::string(fn) + "' is not interpreted by the model");
  if (it->second.arity != static_cast<int>(args.size()))
    throw EvalError(EvalError::Kind::ArityMismatch,
                    "function '" + std::string(fn) + "' has arity " +
                        std::to_string(it->second.arity) + " in the model");
  return it->second.table[tuple_index(args)];
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

class FixtureReader {
 public:
  KripkeModel read(std::string_view text) {
    std::vector<std::pair<int, std::string>> lines;
    std::istringstream is{std::string(text)};
    int n = 0;
    for (std::string line; std::getline(is, line);) {
      ++n;
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      line = trim(line);
      if (!line.empty()) lines.emplace_back(n, line);
    }
    // Names first, so the remaining lines may appear in any order.
    for (const auto& [ln, line] : lines) {
      if (line.starts_with("worlds:")) {
        if (!m_.worlds.empty()) throw FixtureError(ln, "duplicate worlds line");
        m_.worlds = words(line.substr(7));
      } else if (line.starts_with("universe:")) {
        if (!m_.universe.empty()) throw FixtureError(ln, "duplicate universe line");
        m_.universe = words(line.substr(9));
      }
    }
    if (m_.worlds.empty()) throw FixtureError(1, "missing or empty 'worlds:' line");
    if (m_.universe.empty()) throw FixtureError(1, "missing or empty 'universe:' line");
    const std::size_t nw = m_.worlds.size();
    m_.rel.assign(nw, std::vector<bool>(nw, false));
    m_.dom.assign(nw, std::vector<bool>(m_.universe.size(), true));
    std::vector<bool> dom_seen(nw, false);

    for (const auto& [ln, line] : lines) {
      line_ = ln;
      if (line.starts_with("worlds:") || line.starts_with("universe:")) continue;
      if (line.starts_with("rel:")) {
        for (const auto& pair : words(line.substr(4))) {
          auto gt = pair.find('>');
          if (gt == std::string::npos) fail("expected <world>><world>, found '" + pair + "'");
          m_.rel[world(pair.substr(0, gt))][world(pair.substr(gt + 1))] = true;
        }
      } else if (line.starts_with("dom ")) {
        auto colon = line.find(':');
        if (colon == std::string::npos) fail("expected ':' in dom line");
        int w = world(trim(line.substr(4, colon - 4)));
        if (dom_seen[w]) fail("duplicate dom line for " + m_.worlds[w]);
        dom_seen[w] = true;
        m_.dom[w].assign(m_.universe.size(), false);
        for (const auto& x : words(line.substr(colon + 1))) m_.dom[w][individual(x)] = true;
      } else if (line.starts_with("const ")) {
        auto eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'const <name> = <individual>'");
        std::string name = trim(line.substr(6, eq - 6));
        if (name.empty()) fail("missing constant name");
        m_.consts[name] = individual(trim(line.substr(eq + 1)));
      } else if (line.starts_with("fun ")) {
        read_fun(line);
      } else if (line.starts_with("pred ")) {
        read_pred(line);
      } else {
        fail("unrecognized line '" + line + "'");
      }
    }
    for (const auto& [name, f] : m_.funcs) {
      for (std::size_t i = 0; i < f.table.size(); ++i)
        if (f.table[i] < 0)
          throw FixtureError(fun_line_.at(name), "function '" + name + "' is not total");
    }
    return std::move(m_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw FixtureError(line_, msg); }

  int index_of(const std::vector<std::string>& names, const std::string& n,
               const char* what) const {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) fail(std::string("unknown ") + what + " '" + n + "'");
    return static_cast<int>(it - names.begin());
  }
  int world(const std::string& n) const { return index_of(m_.worlds, n, "world"); }
  int individual(const std::string& n) const { return index_of(m_.universe, n, "individual"); }

  std::vector<int> individuals(const std::vector<std::string>& names) const {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(individual(n));
    return out;
  }

  void read_fun(const std::string& line) {
    auto open = line.find('(');
    auto close = line.find(')');
    auto eq = line.find('=');
    if (open == std::string::npos || close == std::string::npos || eq == std::string::npos ||
        !(open < close && close < eq))
      fail("expected 'fun <name>(<args>) = <individual>'");
    std::string name = trim(line.substr(4, open - 4));
    std::vector<int> args = individuals(split_commas(line.substr(open + 1, close - open - 1)));
    if (args.empty()) fail("function '" + name + "' needs arguments; use 'const' for constants");
    auto [it, fresh] = m_.funcs.try_emplace(name);
    if (fresh) {
      it->second.arity = static_cast<int>(args.size());
      it->second.table.assign(m_.tuple_count(it->second.arity), -1);
      fun_line_[name] = line_;
    } else if (it->second.arity != static_cast<int>(args.size())) {
      fail("function '" + name + "' used with two arities");
    }
    it->second.table[m_.tuple_index(args)] = individual(trim(line.substr(eq + 1)));
  }

  void read_pred(const std::string& line) {
    auto at = line.find('@');
    auto colon = line.find(':', at == std::string::npos ? 0 : at);
    if (at == std::string::npos || colon == std::string::npos)
      fail("expected 'pred <name> @ <world>: <tuples>'");
    std::string name = trim(line.substr(5, at - 5));
    int w = world(trim(line.substr(at + 1, colon - at - 1)));
    std::string rest = line.substr(colon + 1);
    std::size_t i = 0;
    while (i < rest.size()) {
      if (std::isspace(static_cast<unsigned char>(rest[i]))) {
        ++i;
        continue;
      }
      std::vector<int> tuple;
      if (rest[i] == '(') {
        auto close = rest.find(')', i);
        if (close == std::string::npos) fail("unterminated tuple");
        tuple = individuals(split_commas(rest.substr(i + 1, close - i - 1)));
        i = close + 1;
      } else {
        std::size_t j = i;
        while (j < rest.size() && !std::isspace(static_cast<unsigned char>(rest[j]))) ++j;
        tuple.push_back(individual(rest.substr(i, j - i)));
        i = j;
      }
      auto [it, fresh] = m_.preds.try_emplace(name);
      Predicate& p = it->second;
      if (fresh) {
        p.arity = static_cast<int>(tuple.size());
        p.extension.assign(m_.worlds.size(), std::vector<bool>(m_.tuple_count(p.arity), false));
      } else if (p.arity != static_cast<int>(tuple.size())) {
        fail("predicate '" + name + "' used with two arities");
      }
      p.extension[w][m_.tuple_index(tuple)] = true;
    }
  }

  KripkeModel m_;
  int line_ = 0;
  std::map<std::string, int> fun_line_;
};

std::vector<int> decode_tuple(std::size_t idx, int arity, std::size_t base) {
  std::vector<int> out(arity);
  for (int i = arity - 1; i >= 0; --i) {
    out[i] = static_cast<int>(idx % base);
    idx /= base;
  }
  return out;
}

}  // namespace

KripkeModel parse_model(std::string_view text) { return FixtureReader().read(text); }

std::string print_model(const KripkeModel& m) {
  std::ostringstream os;
  auto join = [&](const std::vector<int>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + m.universe[xs[i]];
    return s;
  };
  os << "worlds:";
  for (const auto& w : m.worlds) os << ' ' << w;
  os << "\nrel:";
  for (int w = 0; w < m.num_worlds(); ++w)
    for (int v = 0; v < m.num_worlds(); ++v)
      if (m.rel[w][v]) os << ' ' << m.worlds[w] << '>' << m.worlds[v];
  os << "\nuniverse:";
  for (const auto& x : m.universe) os << ' ' << x;
  os << '\n';
  for (int w = 0; w < m.num_worlds(); ++w) {
    os << "dom " << m.worlds[w] << ':';
    for (int x = 0; x < m.num_individuals(); ++x)
      if (m.dom[w][x]) os << ' ' << m.universe[x];
    os << '\n';
  }
  for (const auto& [c, x] : m.consts) os << "const " << c << " = " << m.universe[x] << '\n';
  for (const auto& [name, f] : m.funcs)
    for (std::size_t i = 0; i < f.table.size(); ++i)
      os << "fun " << name << '(' << join(decode_tuple(i, f.arity, m.universe.size())) << ") = "
         << m.universe[f.table[i]] << '\n';
  for (const auto& [name, p] : m.preds) {
    for (int w = 0; w < m.num_worlds(); ++w) {
      std::string tuples;
      for (std::size_t i = 0; i < p.extension[w].size(); ++i) {
        if (!p.extension[w][i]) continue;
        std::string t = join(decode_tuple(i, p.arity, m.universe.size()));
        tuples += ' ';
        tuples += p.arity == 1 ? t : "(" + t + ")";
      }
      if (!tuples.empty()) os << "pred " << name << " @ " << m.worlds[w] << ':' << tuples << '\n';
    }
  }
  return os.str();
}

}  // namespace fml2hol::kripke

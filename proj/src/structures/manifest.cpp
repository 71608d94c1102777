#include "autostruct/manifest.hpp"

#include <optional>
#include <sstream>

#include "autostruct/aut_format.hpp"
#include "autostruct/builtins.hpp"
#include "autostruct/error.hpp"
#include "autostruct/turing.hpp"

namespace autostruct {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw FormatError("manifest line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Presentation parse_structure(std::string_view text, const std::filesystem::path& base_dir,
                             const CompileOptions& options) {
  std::optional<Presentation> p;
  AlphabetPtr alphabet;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  auto require = [&](const char* what) -> Presentation& {
    if (!p) fail(line, std::string(what) + " needs a domain first (builtin:, tm: or domain:)");
    return *p;
  };
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.rfind("define", 0) == 0 && s.size() > 6 && (s[6] == ' ' || s[6] == '\t')) {
      // define Name(x, y) := formula
      const auto assign = s.find(":=");
      if (assign == std::string::npos) fail(line, "expected 'define Name(x, ...) := formula'");
      std::string head = trim(std::string_view(s).substr(6, assign - 6));
      const std::string body = trim(std::string_view(s).substr(assign + 2));
      std::vector<std::string> params;
      std::string name = head;
      if (auto open = head.find('('); open != std::string::npos) {
        if (head.back() != ')') fail(line, "unbalanced parameter list");
        name = trim(std::string_view(head).substr(0, open));
        std::string list = head.substr(open + 1, head.size() - open - 2);
        for (char& c : list)
          if (c == ',') c = ' ';
        std::istringstream ps(list);
        std::string v;
        while (ps >> v) params.push_back(v);
      }
      auto& cur = require("define");
      try {
        p = define_relation(cur, name, body, params, options);
      } catch (const SyntaxError& e) {
        fail(line, std::string("in definition of '") + name + "': " + e.what());
      }
      continue;
    }
    if (auto hash = s.find('#'); hash != std::string::npos) s = trim(std::string_view(s).substr(0, hash));
    if (s.empty()) continue;
    std::istringstream toks(s);
    std::string key;
    toks >> key;
    std::vector<std::string> rest;
    for (std::string t; toks >> t;) rest.push_back(t);
    if (key == "builtin:") {
      if (p) fail(line, "the domain is already set");
      if (rest.size() != 1) fail(line, "expected one builtin name");
      try {
        p = builtin(rest[0]);
      } catch (const InvalidArgument& e) {
        fail(line, e.what());
      }
    } else if (key == "tm:") {
      if (p) fail(line, "the domain is already set");
      if (rest.size() != 1) fail(line, "expected one TM file");
      p = tm_config_space(parse_turing_machine(read_text_file(base_dir / rest[0])));
    } else if (key == "alphabet:") {
      if (rest.empty()) fail(line, "empty alphabet");
      try {
        alphabet = Alphabet::make(rest);
      } catch (const Error& e) {
        fail(line, e.what());
      }
    } else if (key == "domain:") {
      if (p) fail(line, "the domain is already set");
      if (!alphabet) fail(line, "domain: needs an alphabet: line first");
      if (rest.size() != 1) fail(line, "expected one .aut file");
      auto file = load_aut(base_dir / rest[0]);
      if (file.arity != 1) fail(line, "the domain automaton must have one track");
      auto d = relation_from_aut(file, alphabet);
      p.emplace(alphabet, d.dfa());
    } else if (key == "rel") {
      if (rest.size() != 3) fail(line, "expected 'rel Name arity file.aut'");
      auto& cur = require("rel");
      int arity = 0;
      try {
        arity = std::stoi(rest[1]);
      } catch (const std::exception&) {
        fail(line, "bad arity '" + rest[1] + "'");
      }
      auto file = load_aut(base_dir / rest[2]);
      if (file.arity != arity) fail(line, "'" + rest[2] + "' has " + std::to_string(file.arity) + " tracks");
      cur.add_relation(rest[0], relation_from_aut(file, cur.base()));
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  if (!p) throw FormatError("manifest defines no domain");
  return *p;
}

Presentation load_structure(const std::filesystem::path& path, const CompileOptions& options) {
  return parse_structure(read_text_file(path), path.parent_path().empty() ? "." : path.parent_path(), options);
}

void save_structure(const Presentation& p, const std::filesystem::path& path, std::string_view header) {
  const auto dir = path.parent_path();
  const auto stem = path.stem().string();
  std::ostringstream out;
  std::istringstream hs{std::string(header)};
  for (std::string l; std::getline(hs, l);) out << "# " << l << '\n';
  out << "alphabet:";
  for (const auto& n : p.base()->names()) out << ' ' << n;
  out << '\n';
  const auto domain_file = stem + ".domain.aut";
  write_text_file(dir / domain_file, format_aut(p.domain_dfa()));
  out << "domain: " << domain_file << '\n';
  for (const auto& sym : p.signature()) {
    const auto file = stem + "." + sym.name + ".aut";
    write_text_file(dir / file, format_aut(p.relation(sym.name)));
    out << "rel " << sym.name << ' ' << sym.arity << ' ' << file << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace autostruct

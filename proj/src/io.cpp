#include "satrev/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "satrev/error.hpp"

namespace satrev::io {

std::string to_string(Logic logic) {
  switch (logic) {
    case Logic::PL: return "pl";
    case Logic::HCL: return "hcl";
    case Logic::FOL: return "fol";
    case Logic::DL: return "dl";
  }
  return "pl";
}

Logic logic_from(const std::string& name) {
  if (name == "pl") return Logic::PL;
  if (name == "hcl") return Logic::HCL;
  if (name == "fol") return Logic::FOL;
  if (name == "dl") return Logic::DL;
  throw Error::parse("unknown logic '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(trim(s.substr(pos)));
      break;
    }
    out.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw Error::parse("expected true or false, got '" + v + "'", line, 1);
}

// `name : s1 s2 -> s` for functions, `name : s1 s2` for predicates
void parse_fol_decl(fol::Signature& sig, const std::string& decl, bool func, int line) {
  std::size_t colon = decl.find(':');
  if (colon == std::string::npos)
    throw Error::parse("expected 'name : sorts' in declaration '" + decl + "'", line, 1);
  std::string name = trim(decl.substr(0, colon));
  std::string rest = trim(decl.substr(colon + 1));
  auto sort_of = [&](const std::string& s) {
    int idx = sig.sort_index(s);
    if (idx < 0) throw Error::parse("unknown sort '" + s + "'", line, 1);
    return idx;
  };
  if (func) {
    std::size_t arrow = rest.find("->");
    if (arrow == std::string::npos)
      throw Error::parse("function declaration needs '->': " + decl, line, 1);
    fol::Signature::Func f;
    f.name = name;
    for (const auto& s : split_ws(trim(rest.substr(0, arrow)))) f.args.push_back(sort_of(s));
    std::string result = trim(rest.substr(arrow + 2));
    f.result = sort_of(result);
    sig.funcs.push_back(std::move(f));
  } else {
    fol::Signature::Pred p;
    p.name = name;
    for (const auto& s : split_ws(rest)) p.args.push_back(sort_of(s));
    sig.preds.push_back(std::move(p));
  }
}

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  std::map<std::string, std::pair<std::string, int>> header;  // key -> (value, line)
  std::vector<std::pair<std::string, int>> body;
  bool in_body = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (!in_body) {
      if (t.empty() || t[0] == '#') continue;
      if (t == "sentences:") {
        in_body = true;
        continue;
      }
      std::size_t colon = t.find(':');
      if (colon == std::string::npos)
        throw Error::parse("expected 'key: value' in the header, got '" + t + "'", lineno, 1);
      header[trim(t.substr(0, colon))] = {trim(t.substr(colon + 1)), lineno};
    } else {
      if (!t.empty() && t[0] == '#') continue;
      body.push_back({t, lineno});
    }
  }
  if (!in_body) throw Error::parse("document has no 'sentences:' section");

  auto take = [&](const std::string& key) -> std::optional<std::pair<std::string, int>> {
    auto it = header.find(key);
    if (it == header.end()) return std::nullopt;
    auto v = it->second;
    header.erase(it);
    return v;
  };

  auto logic_line = take("logic");
  if (!logic_line) throw Error::parse("document needs a 'logic:' header line");
  doc.logic = logic_from(logic_line->first);
  if (auto v = take("name")) doc.name = v->first;
  if (auto v = take("bound")) doc.bound = std::stoi(v->first);
  if (auto v = take("empty-domain")) doc.allow_empty_domain = parse_bool(v->first, v->second);
  if (auto v = take("nonempty-concepts")) doc.nonempty_concepts = parse_bool(v->first, v->second);

  switch (doc.logic) {
    case Logic::PL:
    case Logic::HCL: {
      auto atoms = take("atoms");
      if (!atoms) throw Error::parse("propositional documents need an 'atoms:' line");
      pl::Signature sig{split_ws(atoms->first)};
      if (sig.atoms.empty()) throw Error::parse("empty atom list", atoms->second, 1);
      if (doc.logic == Logic::PL) {
        doc.pl_sig = sig;
        for (const auto& [t, ln] : body) {
          if (t.empty()) continue;
          try {
            doc.pl_sentences.push_back(pl::parse_sentence(sig, t));
          } catch (const Error& e) {
            throw Error::parse(std::string(e.what()) + " (line " + std::to_string(ln) + ")");
          }
        }
      } else {
        doc.horn_sig = sig;
        // a Horn sentence is a block of clause lines delimited by blank lines
        std::string block;
        int block_line = 0;
        auto flush = [&] {
          if (trim(block).empty()) return;
          try {
            doc.horn_sentences.push_back(horn::parse_sentence(sig, block));
          } catch (const Error& e) {
            throw Error::parse(std::string(e.what()) + " (block at line " +
                               std::to_string(block_line) + ")");
          }
          block.clear();
        };
        for (const auto& [t, ln] : body) {
          if (t.empty()) {
            flush();
          } else {
            if (trim(block).empty()) block_line = ln;
            block += t;
            block += '\n';
          }
        }
        flush();
      }
      break;
    }
    case Logic::FOL: {
      auto sorts = take("sorts");
      if (!sorts) throw Error::parse("first-order documents need a 'sorts:' line");
      doc.fol_sig.sorts = split_ws(sorts->first);
      if (auto funcs = take("funcs"))
        for (const auto& d : split_on(funcs->first, ','))
          if (!d.empty()) parse_fol_decl(doc.fol_sig, d, true, funcs->second);
      if (auto preds = take("preds"))
        for (const auto& d : split_on(preds->first, ','))
          if (!d.empty()) parse_fol_decl(doc.fol_sig, d, false, preds->second);
      if (doc.fol_sig.preds.empty())
        throw Error::parse("first-order documents need at least one predicate");
      for (const auto& [t, ln] : body) {
        if (t.empty()) continue;
        try {
          doc.fol_sentences.push_back(fol::parse_sentence(doc.fol_sig, t));
        } catch (const Error& e) {
          throw Error::parse(std::string(e.what()) + " (line " + std::to_string(ln) + ")");
        }
      }
      break;
    }
    case Logic::DL: {
      auto fragment = take("fragment");
      doc.fragment = dl::Fragment::ALC;
      if (fragment) {
        if (fragment->first == "EL")
          doc.fragment = dl::Fragment::EL;
        else if (fragment->first == "ELU")
          doc.fragment = dl::Fragment::ELU;
        else if (fragment->first == "ALC")
          doc.fragment = dl::Fragment::ALC;
        else
          throw Error::parse("unknown fragment '" + fragment->first + "'", fragment->second, 1);
      }
      auto concepts = take("concepts");
      if (!concepts) throw Error::parse("DL documents need a 'concepts:' line");
      doc.dl_sig.concepts = split_ws(concepts->first);
      doc.dl_sig.roles = {"r_top"};
      if (auto roles = take("roles"))
        for (const auto& r : split_ws(roles->first))
          if (r != "r_top") doc.dl_sig.roles.push_back(r);
      if (auto individuals = take("individuals"))
        doc.dl_sig.individuals = split_ws(individuals->first);
      if (auto exceptions = take("exceptions"))
        for (const auto& e : split_on(exceptions->first, ','))
          if (!e.empty()) doc.exceptions.push_back(dl::parse_concept(doc.dl_sig, e));
      for (const auto& [t, ln] : body) {
        if (t.empty()) continue;
        try {
          dl::Axiom ax = dl::parse_axiom(doc.dl_sig, t);
          if ((ax.fragment() == dl::Fragment::ALC && doc.fragment != dl::Fragment::ALC) ||
              (ax.fragment() == dl::Fragment::ELU && doc.fragment == dl::Fragment::EL))
            throw Error::parse("axiom uses constructors outside fragment " +
                               dl::to_string(doc.fragment));
          doc.dl_axioms.push_back(std::move(ax));
        } catch (const Error& e) {
          throw Error::parse(std::string(e.what()) + " (line " + std::to_string(ln) + ")");
        }
      }
      break;
    }
  }

  if (!header.empty())
    throw Error::parse("unknown header key '" + header.begin()->first + "'",
                       header.begin()->second.second, 1);
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error::usage("cannot open knowledge base file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string serialize(const Document& doc) {
  std::ostringstream out;
  out << "logic: " << to_string(doc.logic) << "\n";
  if (!doc.name.empty()) out << "name: " << doc.name << "\n";
  if (doc.bound) out << "bound: " << *doc.bound << "\n";
  if (doc.allow_empty_domain) out << "empty-domain: true\n";
  if (doc.nonempty_concepts) out << "nonempty-concepts: true\n";

  auto join_ws = [](const std::vector<std::string>& xs) {
    std::string out_s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out_s += ' ';
      out_s += xs[i];
    }
    return out_s;
  };

  switch (doc.logic) {
    case Logic::PL: {
      out << "atoms:" << join_ws(doc.pl_sig.atoms) << "\n\nsentences:\n";
      for (const auto& s : doc.pl_sentences) out << pl::to_string(doc.pl_sig, s) << "\n";
      break;
    }
    case Logic::HCL: {
      out << "atoms:" << join_ws(doc.horn_sig.atoms) << "\n\nsentences:\n";
      for (std::size_t i = 0; i < doc.horn_sentences.size(); ++i) {
        if (i) out << "\n";
        out << horn::to_string(doc.horn_sig, doc.horn_sentences[i]) << "\n";
      }
      break;
    }
    case Logic::FOL: {
      out << "sorts:" << join_ws(doc.fol_sig.sorts) << "\n";
      if (!doc.fol_sig.funcs.empty()) {
        out << "funcs: ";
        for (std::size_t i = 0; i < doc.fol_sig.funcs.size(); ++i) {
          const auto& f = doc.fol_sig.funcs[i];
          if (i) out << ", ";
          out << f.name << " :";
          for (int a : f.args) out << " " << doc.fol_sig.sorts[static_cast<std::size_t>(a)];
          out << " -> " << doc.fol_sig.sorts[static_cast<std::size_t>(f.result)];
        }
        out << "\n";
      }
      out << "preds: ";
      for (std::size_t i = 0; i < doc.fol_sig.preds.size(); ++i) {
        const auto& p = doc.fol_sig.preds[i];
        if (i) out << ", ";
        out << p.name << " :";
        for (int a : p.args) out << " " << doc.fol_sig.sorts[static_cast<std::size_t>(a)];
      }
      out << "\n\nsentences:\n";
      for (const auto& s : doc.fol_sentences) out << fol::to_string(doc.fol_sig, s) << "\n";
      break;
    }
    case Logic::DL: {
      out << "fragment: " << dl::to_string(doc.fragment) << "\n";
      out << "concepts:" << join_ws(doc.dl_sig.concepts) << "\n";
      std::vector<std::string> user_roles(doc.dl_sig.roles.begin() + 1, doc.dl_sig.roles.end());
      out << "roles:" << join_ws(user_roles) << "\n";
      out << "individuals:" << join_ws(doc.dl_sig.individuals) << "\n";
      if (!doc.exceptions.empty()) {
        out << "exceptions: ";
        for (std::size_t i = 0; i < doc.exceptions.size(); ++i) {
          if (i) out << ", ";
          out << dl::to_string(doc.dl_sig, doc.exceptions[i]);
        }
        out << "\n";
      }
      out << "\nsentences:\n";
      for (const auto& ax : doc.dl_axioms) out << dl::to_string(doc.dl_sig, ax) << "\n";
      break;
    }
  }
  return out.str();
}

std::string RunConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == '[') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error::parse("expected 'key = value' in the configuration", lineno, 1);
    config.values[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return config;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error::usage("cannot open configuration file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace satrev::io

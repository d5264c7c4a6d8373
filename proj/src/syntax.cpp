#include "lcc/syntax.hpp"

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

namespace lcc {

namespace {

// Concrete grammar:
//   file  := ("constructors" Ident ("," Ident)* ";")? term
//   term  := "\" var+ "." term | app
//   app   := atom+                       (left-associative)
//   atom  := var | Ctor | "(" term ")" | caseblock "." atom
//   caseblock := "{" (branch (";" branch)*)? "}"
//   branch    := Ctor "->" term
// Variables are lowercase-initial identifiers, constructors uppercase-initial.
// `constructors`, `match` and `with` are reserved words.

enum class TokKind {
  backslash,
  dot,
  lparen,
  rparen,
  lbrace,
  rbrace,
  semi,
  comma,
  arrow,
  bar,
  lower_ident,
  upper_ident,
  kw_constructors,
  kw_match,
  kw_with,
  end,
};

struct Token {
  TokKind kind;
  std::string text;
  int line;
  int column;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto push = [&](TokKind kind, std::string s) {
    tokens.push_back({kind, std::move(s), line, column});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(TokKind::arrow, "->");
      i += 2;
      column += 2;
      continue;
    }
    switch (c) {
      case '\\': push(TokKind::backslash, "\\"); ++i; ++column; continue;
      case '.': push(TokKind::dot, "."); ++i; ++column; continue;
      case '(': push(TokKind::lparen, "("); ++i; ++column; continue;
      case ')': push(TokKind::rparen, ")"); ++i; ++column; continue;
      case '{': push(TokKind::lbrace, "{"); ++i; ++column; continue;
      case '}': push(TokKind::rbrace, "}"); ++i; ++column; continue;
      case ';': push(TokKind::semi, ";"); ++i; ++column; continue;
      case ',': push(TokKind::comma, ","); ++i; ++column; continue;
      case '|': push(TokKind::bar, "|"); ++i; ++column; continue;
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      TokKind kind;
      if (word == "constructors")
        kind = TokKind::kw_constructors;
      else if (word == "match")
        kind = TokKind::kw_match;
      else if (word == "with")
        kind = TokKind::kw_with;
      else if (std::isupper(static_cast<unsigned char>(c)))
        kind = TokKind::upper_ident;
      else
        kind = TokKind::lower_ident;
      push(kind, std::move(word));
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, column);
  }
  tokens.push_back({TokKind::end, "", line, column});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  SourceUnit parse_unit_body() {
    auto [ctors, declared] = parse_declaration();
    declared_ = declared;
    ctors_ = std::move(ctors);
    Term t = parse_term_body();
    expect(TokKind::end, "end of input");
    return {finish_signature(), std::move(t), declared_};
  }

  MatchUnit parse_match_body() {
    auto [ctors, declared] = parse_declaration();
    declared_ = declared;
    ctors_ = std::move(ctors);
    expect(TokKind::kw_match, "'match'");
    MatchProgram program;
    program.scrutinee = parse_term_body();
    expect(TokKind::kw_with, "'with'");
    if (peek().kind == TokKind::bar) next();
    program.clauses.push_back(parse_clause());
    while (peek().kind == TokKind::bar) {
      next();
      program.clauses.push_back(parse_clause());
    }
    expect(TokKind::end, "end of input");
    return {finish_signature(), std::move(program), declared_};
  }

  Term parse_term_against(const Signature& sig) {
    declared_ = true;
    ctors_ = sig.constructors();
    Term t = parse_term_body();
    expect(TokKind::end, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw ParseError(message, at.line, at.column);
  }

  const Token& expect(TokKind kind, const char* what) {
    if (peek().kind != kind)
      fail(std::string("expected ") + what + ", got '" + peek().text + "'", peek());
    return next();
  }

  std::pair<std::vector<Name>, bool> parse_declaration() {
    if (peek().kind != TokKind::kw_constructors) return {{}, false};
    next();
    std::vector<Name> ctors;
    ctors.push_back(expect(TokKind::upper_ident, "a constructor name").text);
    while (peek().kind == TokKind::comma) {
      next();
      ctors.push_back(expect(TokKind::upper_ident, "a constructor name").text);
    }
    expect(TokKind::semi, "';'");
    for (std::size_t i = 0; i < ctors.size(); ++i)
      for (std::size_t j = i + 1; j < ctors.size(); ++j)
        if (ctors[i] == ctors[j]) fail("duplicate constructor: " + ctors[i], peek());
    return {std::move(ctors), true};
  }

  void note_constructor(const Token& tok) {
    if (std::find(ctors_.begin(), ctors_.end(), tok.text) != ctors_.end()) return;
    if (declared_) fail("undeclared constructor: " + tok.text, tok);
    ctors_.push_back(tok.text);
  }

  Signature finish_signature() {
    if (ctors_.empty()) ctors_.push_back("C0");
    return Signature(ctors_);
  }

  bool starts_atom(TokKind kind) const {
    return kind == TokKind::lower_ident || kind == TokKind::upper_ident ||
           kind == TokKind::lparen || kind == TokKind::lbrace;
  }

  Term parse_term_body() {
    if (peek().kind == TokKind::backslash) {
      next();
      std::vector<Name> binders;
      binders.push_back(expect(TokKind::lower_ident, "a variable").text);
      while (peek().kind == TokKind::lower_ident) binders.push_back(next().text);
      expect(TokKind::dot, "'.'");
      return lam(binders, parse_term_body());
    }
    return parse_app();
  }

  Term parse_app() {
    Term t = parse_atom();
    while (starts_atom(peek().kind)) t = app(std::move(t), parse_atom());
    return t;
  }

  Term parse_atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokKind::lower_ident:
        return var(next().text);
      case TokKind::upper_ident:
        note_constructor(tok);
        return cons(next().text);
      case TokKind::lparen: {
        next();
        Term t = parse_term_body();
        expect(TokKind::rparen, "')'");
        return t;
      }
      case TokKind::lbrace: {
        CaseBinding binding = parse_caseblock();
        expect(TokKind::dot, "'.' after a case block");
        return case_of(std::move(binding), parse_atom());
      }
      default:
        fail("expected a term, got '" + tok.text + "'", tok);
    }
  }

  CaseBinding parse_caseblock() {
    expect(TokKind::lbrace, "'{'");
    std::vector<std::pair<Name, Term>> branches;
    if (peek().kind != TokKind::rbrace) {
      branches.push_back(parse_branch());
      while (peek().kind == TokKind::semi) {
        next();
        branches.push_back(parse_branch());
      }
    }
    const Token& close = peek();
    expect(TokKind::rbrace, "'}'");
    for (std::size_t i = 0; i < branches.size(); ++i)
      for (std::size_t j = i + 1; j < branches.size(); ++j)
        if (branches[i].first == branches[j].first)
          fail("duplicate branch constructor: " + branches[i].first, close);
    return CaseBinding(std::move(branches));
  }

  std::pair<Name, Term> parse_branch() {
    const Token& ctor = expect(TokKind::upper_ident, "a constructor name");
    note_constructor(ctor);
    expect(TokKind::arrow, "'->'");
    return {ctor.text, parse_term_body()};
  }

  MatchClause parse_clause() {
    const Token& ctor = expect(TokKind::upper_ident, "a constructor name");
    note_constructor(ctor);
    MatchClause clause;
    clause.ctor = ctor.text;
    while (peek().kind == TokKind::lower_ident) clause.params.push_back(next().text);
    expect(TokKind::arrow, "'->'");
    clause.body = parse_term_body();
    return clause;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<Name> ctors_;
  bool declared_ = false;
};

enum class PrintSlot { top, fun, arg, scrutinee };

bool needs_parens(const Term& t, PrintSlot slot) {
  switch (slot) {
    case PrintSlot::top:
      return false;
    case PrintSlot::fun:
      return as_lam(t) != nullptr;
    case PrintSlot::arg:
    case PrintSlot::scrutinee:
      return as_lam(t) != nullptr || as_app(t) != nullptr;
  }
  return false;
}

void print_rec(const Term& t, PrintSlot slot, std::string& out) {
  const bool parens = needs_parens(t, slot);
  if (parens) out += '(';
  if (const auto* v = as_var(t)) {
    out += v->name;
  } else if (const auto* c = as_cons(t)) {
    out += c->name;
  } else if (const auto* a = as_app(t)) {
    print_rec(a->fun, PrintSlot::fun, out);
    out += ' ';
    print_rec(a->arg, PrintSlot::arg, out);
  } else if (const auto* l = as_lam(t)) {
    out += '\\';
    out += l->binder;
    Term current = l->body;
    while (const auto* inner = as_lam(current)) {
      out += ' ';
      out += inner->binder;
      current = inner->body;
    }
    out += ". ";
    print_rec(current, PrintSlot::top, out);
  } else if (const auto* k = as_case(t)) {
    out += print(k->binding);
    out += " . ";
    print_rec(k->scrutinee, PrintSlot::scrutinee, out);
  }
  if (parens) out += ')';
}

}  // namespace

SourceUnit parse_unit(std::string_view text) { return Parser(text).parse_unit_body(); }

Term parse_term(const Signature& sig, std::string_view text) {
  return Parser(text).parse_term_against(sig);
}

MatchUnit parse_match_unit(std::string_view text) { return Parser(text).parse_match_body(); }

std::string print(const Term& t) {
  std::string out;
  print_rec(t, PrintSlot::top, out);
  return out;
}

std::string print(const CaseBinding& b) {
  std::string out = "{";
  bool first = true;
  for (const auto& [ctor, body] : b.branches()) {
    if (!first) out += "; ";
    first = false;
    out += ctor;
    out += " -> ";
    print_rec(body, PrintSlot::top, out);
  }
  out += '}';
  return out;
}

std::string print_unit(const Signature& sig, const Term& t) {
  std::string out = "constructors ";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) out += ", ";
    out += sig.constructors()[i];
  }
  out += ";\n";
  out += print(t);
  out += '\n';
  return out;
}

Term compile_match(const Signature& sig, const MatchProgram& program) {
  validate_over(sig, program.scrutinee);
  std::vector<std::pair<Name, Term>> branches;
  branches.reserve(program.clauses.size());
  for (const MatchClause& clause : program.clauses) {
    if (!sig.contains(clause.ctor))
      throw SignatureError("constructor not declared: " + clause.ctor);
    for (const auto& existing : branches)
      if (existing.first == clause.ctor)
        throw PreconditionError("duplicate clause constructor: " + clause.ctor);
    validate_over(sig, clause.body);
    branches.emplace_back(clause.ctor, lam(clause.params, clause.body));
  }
  return case_of(CaseBinding(std::move(branches)), program.scrutinee);
}

std::string step_to_json_line(const Step& step) {
  nlohmann::ordered_json j;
  j["rule"] = std::string(rule_short_name(step.rule));
  nlohmann::ordered_json pos = nlohmann::ordered_json::array();
  for (const PathStep& p : step.pos.path) pos.push_back(p.to_string());
  j["pos"] = std::move(pos);
  j["term"] = print(step.after);
  return j.dump();
}

std::string trace_to_json_lines(const Trace& trace) {
  std::string out;
  for (const Step& step : trace) {
    out += step_to_json_line(step);
    out += '\n';
  }
  return out;
}

std::string step_to_text(const Step& step) {
  std::string out(rule_name(step.rule));
  out += " @ ";
  out += step.pos.to_string();
  out += "  ->  ";
  out += print(step.after);
  return out;
}

std::string error_to_json_line(const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = message;
  return j.dump();
}

std::string error_to_json_line(const ParseError& error) {
  nlohmann::ordered_json j;
  j["error"] = std::string(error.what());
  j["line"] = error.line;
  j["column"] = error.column;
  return j.dump();
}

}  // namespace lcc

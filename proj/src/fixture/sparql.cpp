#include "fixture/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rdf/lexer.hpp"

namespace gsb::fixture::sparql {

using rdf::SyntaxError;
using rdf::Term;
using rdf::detail::Lexer;
using rdf::detail::Tok;
using rdf::detail::Token;

namespace {

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

// Builtins evaluated by the fixture, by upper-cased keyword.
const std::set<std::string> kBuiltins = {"DATATYPE", "STR",   "LANG",     "ISIRI", "ISURI",
                                         "ISLITERAL", "ISBLANK", "BOUND", "SAMETERM"};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Query query() {
    prologue();
    Query q;
    const auto form = keyword();
    if (form == "SELECT") {
      q.form = Query::Form::Select;
      if (is_keyword("DISTINCT") || is_keyword("REDUCED")) q.distinct = upper(lex_.next().text) == "DISTINCT";
      if (is_punct("*")) {
        lex_.next();
        q.select_all = true;
      } else if (is_punct("(")) {
        lex_.next();
        expect_keyword("COUNT");
        expect_punct("(");
        expect_punct("*");
        expect_punct(")");
        expect_keyword("AS");
        const Token v = lex_.next();
        if (v.type != Tok::Var) throw SyntaxError("expected a variable after AS", v.line);
        expect_punct(")");
        q.count_variable = v.text;
      } else {
        while (lex_.peek().type == Tok::Var) q.projection.push_back(lex_.next().text);
        if (q.projection.empty()) fail("SELECT needs '*' or at least one variable");
      }
    } else if (form == "ASK") {
      q.form = Query::Form::Ask;
    } else {
      fail("only SELECT and ASK queries are supported");
    }
    if (is_keyword("WHERE")) lex_.next();
    group(q.where);
    modifiers(q);
    if (lex_.peek().type != Tok::End) fail("unexpected '" + lex_.peek().text + "' after the query");
    return q;
  }

  std::vector<UpdateOperation> update() {
    std::vector<UpdateOperation> ops;
    prologue();
    while (lex_.peek().type != Tok::End) {
      ops.push_back(operation());
      if (is_punct(";")) {
        lex_.next();
        prologue();
      } else {
        break;
      }
    }
    if (lex_.peek().type != Tok::End) fail("unexpected '" + lex_.peek().text + "' in update");
    return ops;
  }

 private:
  [[noreturn]] void fail(const std::string& what) { throw SyntaxError(what, lex_.peek().line); }

  bool is_keyword(std::string_view kw) {
    const auto& t = lex_.peek();
    return t.type == Tok::Name && upper(t.text) == kw;
  }
  bool is_punct(std::string_view p) {
    const auto& t = lex_.peek();
    return t.type == Tok::Punct && t.text == p;
  }
  std::string keyword() {
    if (lex_.peek().type != Tok::Name) fail("expected a keyword");
    return upper(lex_.next().text);
  }
  void expect_keyword(std::string_view kw) {
    if (!is_keyword(kw)) fail("expected " + std::string(kw));
    lex_.next();
  }
  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    lex_.next();
  }

  void prologue() {
    for (;;) {
      if (is_keyword("PREFIX")) {
        lex_.next();
        const Token p = lex_.next();
        if (p.type != Tok::PName || p.text.back() != ':') fail("expected a prefix name");
        const Token iri = lex_.next();
        if (iri.type != Tok::IriRef) fail("expected an IRI for the prefix");
        prefixes_[p.text.substr(0, p.text.size() - 1)] = iri.text;
      } else if (is_keyword("BASE")) {
        lex_.next();
        if (lex_.next().type != Tok::IriRef) fail("expected a base IRI");
      } else {
        return;
      }
    }
  }

  std::string iri() {
    const Token t = lex_.next();
    if (t.type == Tok::IriRef) return t.text;
    if (t.type == Tok::PName) return rdf::detail::expand_pname(t.text, prefixes_, t.line);
    throw SyntaxError("expected an IRI", t.line);
  }

  Term literal_or_iri(bool allow_blank) {
    const Token t = lex_.next();
    switch (t.type) {
      case Tok::IriRef: return Term::iri(t.text);
      case Tok::PName: return Term::iri(rdf::detail::expand_pname(t.text, prefixes_, t.line));
      case Tok::Blank:
        if (!allow_blank) break;
        return Term::blank(t.text);
      case Tok::String:
        if (lex_.peek().type == Tok::LangTag) return Term::lang_literal(t.text, lex_.next().text);
        if (lex_.peek().type == Tok::DoubleCaret) {
          lex_.next();
          return Term::literal(t.text, iri());
        }
        return Term::literal(t.text);
      case Tok::Integer: return Term::literal(t.text, rdf::xsd("integer"));
      case Tok::Decimal: return Term::literal(t.text, rdf::xsd("decimal"));
      case Tok::Double: return Term::literal(t.text, rdf::xsd("double"));
      case Tok::Name:
        if (t.text == "true" || t.text == "false") return Term::literal(t.text, rdf::xsd("boolean"));
        break;
      case Tok::Punct:
        if ((t.text == "-" || t.text == "+") &&
            (lex_.peek().type == Tok::Integer || lex_.peek().type == Tok::Decimal || lex_.peek().type == Tok::Double)) {
          auto n = literal_or_iri(false);
          if (t.text == "-") n.value = "-" + n.value;
          return n;
        }
        break;
      default: break;
    }
    throw SyntaxError("unexpected '" + t.text + "'", t.line);
  }

  Slot slot(bool predicate_position) {
    if (lex_.peek().type == Tok::Var) return {lex_.next().text, {}};
    if (predicate_position && lex_.peek().type == Tok::Name && lex_.peek().text == "a") {
      lex_.next();
      return {std::nullopt, Term::iri(rdf::rdf("type"))};
    }
    return {std::nullopt, literal_or_iri(true)};
  }

  void group(std::vector<GroupElement>& out) {
    expect_punct("{");
    while (!is_punct("}")) {
      if (lex_.peek().type == Tok::End) fail("unterminated group");
      if (is_keyword("FILTER")) {
        lex_.next();
        out.push_back(Filter{bracketted_or_call()});
      } else if (is_keyword("BIND")) {
        lex_.next();
        expect_punct("(");
        auto e = expression();
        expect_keyword("AS");
        if (lex_.peek().type != Tok::Var) fail("expected a variable after AS");
        const auto var = lex_.next().text;
        expect_punct(")");
        out.push_back(Bind{std::move(e), var});
      } else if (lex_.peek().type == Tok::Name && lex_.peek().text != "a" && lex_.peek().text != "true" &&
                 lex_.peek().text != "false") {
        fail("unsupported group element '" + lex_.peek().text + "'");
      } else {
        triples_block(out);
      }
      if (is_punct(".")) lex_.next();
    }
    expect_punct("}");
  }

  void triples_block(std::vector<GroupElement>& out) {
    const Slot s = slot(false);
    for (;;) {
      const Slot p = slot(true);
      for (;;) {
        out.push_back(TriplePattern{s, p, slot(false)});
        if (!is_punct(",")) break;
        lex_.next();
      }
      if (!is_punct(";")) break;
      lex_.next();
      if (is_punct(".") || is_punct("}")) break;
    }
  }

  void modifiers(Query& q) {
    if (is_keyword("ORDER")) {
      lex_.next();
      expect_keyword("BY");
      for (;;) {
        if (lex_.peek().type == Tok::Var) {
          q.order.push_back({variable_expr(lex_.next().text), false});
        } else if (is_keyword("ASC") || is_keyword("DESC")) {
          const bool desc = upper(lex_.next().text) == "DESC";
          expect_punct("(");
          auto e = expression();
          expect_punct(")");
          q.order.push_back({std::move(e), desc});
        } else if (is_punct("(")) {
          q.order.push_back({bracketted_or_call(), false});
        } else {
          break;
        }
      }
      if (q.order.empty()) fail("ORDER BY needs at least one key");
    }
    for (;;) {
      if (is_keyword("LIMIT")) {
        lex_.next();
        q.limit = count();
      } else if (is_keyword("OFFSET")) {
        lex_.next();
        q.offset = count();
      } else {
        break;
      }
    }
  }

  std::size_t count() {
    const Token t = lex_.next();
    if (t.type != Tok::Integer) throw SyntaxError("expected a non-negative integer", t.line);
    return static_cast<std::size_t>(std::stoull(t.text));
  }

  static ExprPtr variable_expr(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Var;
    e->name = std::move(name);
    return e;
  }

  ExprPtr bracketted_or_call() {
    if (is_punct("(")) {
      lex_.next();
      auto e = expression();
      expect_punct(")");
      return e;
    }
    return primary();
  }

  ExprPtr binary(Expr::Kind kind, std::string op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->name = std::move(op);
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  ExprPtr expression() {
    auto e = conjunction();
    while (is_punct("||")) {
      lex_.next();
      e = binary(Expr::Kind::Or, "||", e, conjunction());
    }
    return e;
  }

  ExprPtr conjunction() {
    auto e = relational();
    while (is_punct("&&")) {
      lex_.next();
      e = binary(Expr::Kind::And, "&&", e, relational());
    }
    return e;
  }

  ExprPtr relational() {
    auto e = unary();
    for (std::string_view op : {"=", "!=", "<", "<=", ">", ">="}) {
      if (is_punct(op)) {
        lex_.next();
        return binary(Expr::Kind::Compare, std::string(op), e, unary());
      }
    }
    return e;
  }

  ExprPtr unary() {
    if (is_punct("!")) {
      lex_.next();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Not;
      e->args = {unary()};
      return e;
    }
    return primary();
  }

  std::vector<ExprPtr> arguments() {
    std::vector<ExprPtr> args;
    expect_punct("(");
    if (!is_punct(")")) {
      for (;;) {
        args.push_back(expression());
        if (!is_punct(",")) break;
        lex_.next();
      }
    }
    expect_punct(")");
    return args;
  }

  ExprPtr primary() {
    const auto& t = lex_.peek();
    if (t.type == Tok::Var) return variable_expr(lex_.next().text);
    if (is_punct("(")) return bracketted_or_call();
    if (t.type == Tok::Name && kBuiltins.count(upper(t.text))) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Call;
      e->name = upper(lex_.next().text);
      e->args = arguments();
      return e;
    }
    if (t.type == Tok::Name && t.text != "true" && t.text != "false") fail("unsupported function '" + t.text + "'");
    auto e = std::make_shared<Expr>();
    e->value = literal_or_iri(false);
    if (e->value.is_iri() && is_punct("(")) {
      e->kind = Expr::Kind::Call;
      e->name = e->value.value;
      e->value = {};
      e->args = arguments();
    } else {
      e->kind = Expr::Kind::Constant;
    }
    return e;
  }

  UpdateOperation operation() {
    UpdateOperation op;
    const auto kw = keyword();
    if (kw == "INSERT" || kw == "DELETE") {
      expect_keyword("DATA");
      op.kind = kw == "INSERT" ? UpdateOperation::Kind::InsertData : UpdateOperation::Kind::DeleteData;
      expect_punct("{");
      while (!is_punct("}")) {
        if (is_keyword("GRAPH")) {
          lex_.next();
          op.graph = iri();
          expect_punct("{");
          quad_data(op.triples);
          expect_punct("}");
        } else {
          quad_data(op.triples);
          if (lex_.peek().type == Tok::End) fail("unterminated data block");
        }
      }
      expect_punct("}");
      return op;
    }
    if (kw != "DROP" && kw != "CLEAR") fail("only INSERT DATA, DELETE DATA, DROP and CLEAR are supported");
    op.kind = kw == "DROP" ? UpdateOperation::Kind::Drop : UpdateOperation::Kind::Clear;
    if (is_keyword("SILENT")) {
      lex_.next();
      op.silent = true;
    }
    const auto target = keyword();
    if (target == "GRAPH") op.graph = iri();
    else if (target == "ALL" || target == "NAMED") op.all = true;
    else if (target != "DEFAULT") fail("expected GRAPH, DEFAULT, NAMED or ALL");
    return op;
  }

  void quad_data(std::vector<rdf::Triple>& out) {
    while (!is_punct("}") && !is_keyword("GRAPH") && lex_.peek().type != Tok::End) {
      std::vector<GroupElement> patterns;
      triples_block(patterns);
      for (const auto& p : patterns) {
        const auto& tp = std::get<TriplePattern>(p);
        if (tp.subject.var || tp.predicate.var || tp.object.var) fail("variables are not allowed in data");
        out.push_back({tp.subject.term, tp.predicate.term, tp.object.term});
      }
      if (is_punct(".")) lex_.next();
    }
  }

  Lexer lex_;
  rdf::PrefixMap prefixes_;
};

void collect_vars(const ExprPtr& e, std::vector<std::string>& out) {
  if (e->kind == Expr::Kind::Var && std::find(out.begin(), out.end(), e->name) == out.end()) out.push_back(e->name);
  for (const auto& a : e->args) collect_vars(a, out);
}

void collect_calls(const ExprPtr& e, std::vector<std::string>& out) {
  if (e->kind == Expr::Kind::Call && !kBuiltins.count(e->name)) out.push_back(e->name);
  for (const auto& a : e->args) collect_calls(a, out);
}

}  // namespace

std::vector<std::string> Query::group_variables() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& v) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  for (const auto& el : where) {
    if (const auto* tp = std::get_if<TriplePattern>(&el)) {
      for (const auto* s : {&tp->subject, &tp->predicate, &tp->object})
        if (s->var) add(*s->var);
    } else if (const auto* b = std::get_if<Bind>(&el)) {
      collect_vars(b->expr, out);
      add(b->var);
    }
  }
  return out;
}

std::vector<std::string> Query::called_functions() const {
  std::vector<std::string> out;
  for (const auto& el : where) {
    if (const auto* f = std::get_if<Filter>(&el)) collect_calls(f->expr, out);
    if (const auto* b = std::get_if<Bind>(&el)) collect_calls(b->expr, out);
  }
  for (const auto& k : order) collect_calls(k.expr, out);
  return out;
}

Query parse_query(std::string_view text) { return Parser(text).query(); }

std::vector<UpdateOperation> parse_update(std::string_view text) { return Parser(text).update(); }

}  // namespace gsb::fixture::sparql

#pragma once

#include <compare>
#include <string>

namespace rdffrag {

/// An RDF term occupying a vertex position: an IRI or a plain literal.
struct Term {
  enum class Kind { Iri, Literal };

  Kind kind = Kind::Iri;
  std::string lexical;

  static Term iri(std::string s) { return Term{Kind::Iri, std::move(s)}; }
  static Term literal(std::string s) { return Term{Kind::Literal, std::move(s)}; }

  bool is_iri() const { return kind == Kind::Iri; }

  auto operator<=>(const Term&) const = default;
};

struct Triple {
  Term subject;
  std::string property;
  Term object;

  auto operator<=>(const Triple&) const = default;
};

/// Surface form used throughout the tool chain: <iri> or "literal" with
/// backslash escapes for quote and backslash.
std::string to_ntriples(const Term& t);

}  // namespace rdffrag

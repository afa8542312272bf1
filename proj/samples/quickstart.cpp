// Minimal library walkthrough: parse one query, resolve its join constraint
// through the aliases, profile both ends, and classify.

#include <iostream>

#include "relq/relq.hpp"

int main() {
  using namespace relq;

  // Two in-memory tables. users.id is unique; orders.user_id repeats.
  Table users = build_table(
      "users", {"id", "name"},
      {{"1", "ann"}, {"2", "ben"}, {"3", "cho"}, {"4", "dee"}});
  Table orders = build_table(
      "orders", {"order_id", "user_id"},
      {{"100", "1"}, {"101", "1"}, {"102", "2"}, {"103", "3"}, {"104", "3"}, {"105", "3"}});

  TableStore store;
  store.tables["users"] = users;
  store.tables["orders"] = orders;
  Catalog catalog = store.catalog();

  SqlAst ast = parse_sql(
      "SELECT u.name FROM users u JOIN orders o ON u.id = o.user_id");
  Extraction extraction = extract(ast);

  Resolver resolver(extraction, catalog);
  for (const RawConstraint& raw : extraction.constraints) {
    auto resolution = resolver.resolve(raw);
    auto* resolved = std::get_if<ResolvedConstraint>(&resolution);
    if (!resolved) continue;

    std::cout << raw.to_string() << "  resolves to  "
              << resolved->left.to_string() << " = " << resolved->right.to_string()
              << "\n";

    auto validation = validate(resolved->left, resolved->right, catalog);
    RelationshipCandidate candidate = classify(
        profile_constraint(store, std::get<ValidatedConstraint>(validation)),
        Thresholds{});

    if (candidate.classification == Classification::pk_fk) {
      std::cout << "  PK " << candidate.end(candidate.pk_end).to_string()
                << ", FK " << candidate.end(1 - candidate.pk_end).to_string()
                << " (" << to_string(candidate.rule_used)
                << ", confidence " << candidate.confidence.fixed4() << ")\n";
    } else {
      std::cout << "  ambiguous\n";
    }
  }
  return 0;
}

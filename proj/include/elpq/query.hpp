#pragma once

#include <elpq/model.hpp>

#include <string>
#include <vector>

namespace elpq {

enum class Modality : unsigned char { K, M };

struct QueryItem {
    Modality op = Modality::K;
    Literal  literal;

    std::string str() const { return (op == Modality::K ? "K " : "M ") + literal.str(); }

    friend auto operator<=>(const QueryItem&, const QueryItem&) = default;
    friend bool operator==(const QueryItem&, const QueryItem&)  = default;
};

/// Epistemic query: a set of `K l` / `M l` items over ground literals.
struct Query {
    std::vector<QueryItem> items; // sorted, unique

    bool empty() const noexcept { return items.empty(); }
    void add(QueryItem item);
    std::string str() const;

    friend bool operator==(const Query&, const Query&) = default;
};

} // namespace elpq

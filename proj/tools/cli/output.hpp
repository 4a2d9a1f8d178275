#pragma once
// Result sink shared by all subcommands: aligned text by default, one JSON
// record with --json.

#include "infonomics/scalar.hpp"
#include "infonomics/signals.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cli {

using Json = nlohmann::ordered_json;

Json cell(double x);
Json cell(const infonomics::Rational& x);
Json cell(const std::optional<double>& x);  // null reads "undefined"
Json cell(const std::optional<bool>& x);
std::string cell_text(const Json& c);

template <class T>
Json cells(const std::vector<T>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(cell(x));
    return out;
}

template <class T>
Json cells(const infonomics::Matrix<T>& m) {
    Json out = Json::array();
    for (const auto& row : m) out.push_back(cells(row));
    return out;
}

class Output {
public:
    Output(bool json, std::string command);

    void field(const std::string& key, Json value);
    void table(const std::string& name, std::vector<std::string> headers, std::vector<std::vector<Json>> rows);
    // A labelled matrix; the first column carries the row labels.
    template <class T>
    void matrix(const std::string& name, const std::string& corner, const std::vector<std::string>& row_labels,
                const std::vector<std::string>& col_labels, const infonomics::Matrix<T>& m) {
        std::vector<std::string> headers{corner};
        headers.insert(headers.end(), col_labels.begin(), col_labels.end());
        std::vector<std::vector<Json>> rows;
        for (std::size_t i = 0; i < m.size(); ++i) {
            std::vector<Json> row{i < row_labels.size() ? Json(row_labels[i]) : Json(i)};
            for (const auto& v : m[i]) row.push_back(cell(v));
            rows.push_back(std::move(row));
        }
        table(name, std::move(headers), std::move(rows));
    }
    // Emitted verbatim in JSON mode, pretty-printed in text mode.
    void document(const std::string& key, Json value);
    void note(const std::string& text);

    void write(std::ostream& os) const;

private:
    struct Table {
        std::string name;
        std::vector<std::string> headers;
        std::vector<std::vector<Json>> rows;
    };
    struct Item {
        enum Kind { Field, TableItem, Document, Note } kind;
        std::string key;
        Json value;
        std::size_t table = 0;
    };

    bool json_;
    std::string command_;
    std::vector<Item> items_;
    std::vector<Table> tables_;
};

}  // namespace cli

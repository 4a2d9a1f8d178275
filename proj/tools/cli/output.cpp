#include "output.hpp"

#include <algorithm>
#include <cmath>

namespace cli {

Json cell(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Json cell(const infonomics::Rational& x) {
    if (denominator(x) == 1 && abs(numerator(x)) < boost::multiprecision::cpp_int(1) << 62)
        return numerator(x).convert_to<long long>();
    return infonomics::format_scalar(x);
}

Json cell(const std::optional<double>& x) { return x ? cell(*x) : Json(nullptr); }

Json cell(const std::optional<bool>& x) { return x ? Json(*x) : Json(nullptr); }

std::string cell_text(const Json& c) {
    switch (c.type()) {
    case Json::value_t::null: return "undefined";
    case Json::value_t::boolean: return c.get<bool>() ? "yes" : "no";
    case Json::value_t::string: return c.get<std::string>();
    case Json::value_t::number_float: return infonomics::format_scalar(c.get<double>());
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned: return c.dump();
    case Json::value_t::array: {
        std::string s = "[";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? ", " : "") + cell_text(c[i]);
        return s + "]";
    }
    default: return c.dump();
    }
}

Output::Output(bool json, std::string command) : json_(json), command_(std::move(command)) {}

void Output::field(const std::string& key, Json value) { items_.push_back({Item::Field, key, std::move(value)}); }

void Output::table(const std::string& name, std::vector<std::string> headers, std::vector<std::vector<Json>> rows) {
    tables_.push_back({name, std::move(headers), std::move(rows)});
    items_.push_back({Item::TableItem, name, nullptr, tables_.size() - 1});
}

void Output::document(const std::string& key, Json value) {
    items_.push_back({Item::Document, key, std::move(value)});
}

void Output::note(const std::string& text) { items_.push_back({Item::Note, "", text}); }

void Output::write(std::ostream& os) const {
    if (json_) {
        Json rec;
        rec["command"] = command_;
        for (const auto& it : items_) {
            switch (it.kind) {
            case Item::Field:
            case Item::Document: rec[it.key] = it.value; break;
            case Item::Note: rec["notes"].push_back(it.value); break;
            case Item::TableItem: {
                const auto& t = tables_[it.table];
                Json rows = Json::array();
                for (const auto& r : t.rows) {
                    Json o;
                    for (std::size_t k = 0; k < t.headers.size() && k < r.size(); ++k) o[t.headers[k]] = r[k];
                    rows.push_back(std::move(o));
                }
                rec[t.name] = std::move(rows);
                break;
            }
            }
        }
        os << rec.dump(2) << '\n';
        return;
    }

    std::size_t key_width = 0;
    for (const auto& it : items_)
        if (it.kind == Item::Field) key_width = std::max(key_width, it.key.size());
    bool after_block = false;
    for (const auto& it : items_) {
        switch (it.kind) {
        case Item::Field:
            if (after_block) os << '\n';
            after_block = false;
            os << it.key << std::string(key_width - it.key.size() + 2, ' ') << cell_text(it.value) << '\n';
            break;
        case Item::Note:
            os << "note: " << it.value.get<std::string>() << '\n';
            break;
        case Item::Document:
            os << '\n' << it.key << ":\n" << it.value.dump(2) << '\n';
            after_block = true;
            break;
        case Item::TableItem: {
            const auto& t = tables_[it.table];
            std::vector<std::vector<std::string>> text;
            std::vector<std::size_t> width(t.headers.size(), 0);
            for (std::size_t k = 0; k < t.headers.size(); ++k) width[k] = t.headers[k].size();
            for (const auto& r : t.rows) {
                std::vector<std::string> line;
                for (std::size_t k = 0; k < r.size() && k < width.size(); ++k) {
                    line.push_back(cell_text(r[k]));
                    width[k] = std::max(width[k], line.back().size());
                }
                text.push_back(std::move(line));
            }
            auto emit = [&](const std::vector<std::string>& line) {
                std::string s;
                for (std::size_t k = 0; k < line.size(); ++k) {
                    s += line[k];
                    if (k + 1 < line.size()) s += std::string(width[k] - line[k].size() + 2, ' ');
                }
                os << s << '\n';
            };
            os << '\n' << t.name << ":\n";
            emit(t.headers);
            for (const auto& line : text) emit(line);
            after_block = true;
            break;
        }
        }
    }
}

}  // namespace cli

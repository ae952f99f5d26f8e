#include "ppgfit/csv.hpp"

#include "ppgfit/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ppgfit::csv {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    for (auto& f : out) {
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
    }
    return out;
}

} // namespace

bool is_number(const std::string& field) {
    if (field.empty()) return false;
    char* end = nullptr;
    std::strtod(field.c_str(), &end);
    return end != nullptr && *end == '\0';
}

double to_double(const std::string& field, std::size_t row_index) {
    if (!is_number(field))
        throw InputError("csv: non-numeric field '" + field + "' at data row " +
                         std::to_string(row_index + 1));
    return std::strtod(field.c_str(), nullptr);
}

Document read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("csv: cannot open '" + path + "'");
    Document doc;
    std::string line;
    bool first_data_line = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t'))
            trimmed.erase(trimmed.begin());
        if (trimmed.empty()) continue;
        if (trimmed.front() == '#') {
            std::string c = trimmed.substr(1);
            while (!c.empty() && c.front() == ' ') c.erase(c.begin());
            doc.comments.push_back(c);
            continue;
        }
        std::vector<std::string> fields = split_fields(trimmed);
        if (first_data_line) {
            first_data_line = false;
            bool all_numeric = true;
            for (const auto& f : fields)
                if (!is_number(f)) { all_numeric = false; break; }
            if (!all_numeric) {
                doc.header = fields;
                continue;
            }
        }
        doc.rows.push_back(fields);
    }
    return doc;
}

std::string format(double value) {
    if (std::isnan(value)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

Writer::Writer(const std::string& path, const std::vector<std::string>& header) {
    auto* out = new std::ofstream(path);
    if (!*out) {
        delete out;
        throw InputError("csv: cannot write '" + path + "'");
    }
    stream_ = out;
    if (!header.empty()) row(header);
}

Writer::~Writer() { delete static_cast<std::ofstream*>(stream_); }

void Writer::row(const std::vector<std::string>& fields) {
    auto& out = *static_cast<std::ofstream*>(stream_);
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

} // namespace ppgfit::csv

#pragma once

#include <string>
#include <vector>

namespace ppgfit::csv {

struct Document {
    std::vector<std::string> header;                // empty if the file has none
    std::vector<std::vector<std::string>> rows;     // raw fields
    std::vector<std::string> comments;              // '#' lines, prefix stripped
};

// Reads a comma-separated file. A first row whose fields are not all numeric
// is treated as the header. Blank lines are skipped.
Document read(const std::string& path);

bool is_number(const std::string& field);

// Parses a field to double; throws InputError naming the row on failure.
double to_double(const std::string& field, std::size_t row_index);

// Full-precision formatting used for every emitted CSV so reruns are
// byte-identical.
std::string format(double value);

class Writer {
public:
    Writer(const std::string& path, const std::vector<std::string>& header);
    ~Writer();
    Writer(const Writer&) = delete;
    Writer& operator=(const Writer&) = delete;

    void row(const std::vector<std::string>& fields);

private:
    void* stream_;
};

} // namespace ppgfit::csv

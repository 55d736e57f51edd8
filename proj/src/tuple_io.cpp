#include "admtuple/tuple_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace admtuple {

Tuple read_tuple(std::istream& in) {
    Tuple out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto last = line.find_last_not_of(" \t\r");
        const char* begin = line.data() + first;
        const char* end = line.data() + last + 1;
        if (*begin == '+') ++begin;
        Value v{};
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr != end)
            throw std::runtime_error("tuple file line " + std::to_string(line_no) + ": not an integer: '" + line + "'");
        if (!out.empty() && v <= out.back())
            throw std::runtime_error("tuple file line " + std::to_string(line_no) + ": values must be strictly increasing");
        out.push_back(v);
    }
    return out;
}

Tuple read_tuple_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tuple file '" + path + "'");
    return read_tuple(in);
}

void write_tuple(std::ostream& out, const Tuple& tuple) {
    out << "# k=" << tuple.size();
    if (!tuple.empty()) out << " diameter=" << (tuple.back() - tuple.front());
    out << '\n';
    for (Value v : tuple) out << v << '\n';
}

void write_tuple_file(const std::string& path, const Tuple& tuple) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write tuple file '" + path + "'");
    write_tuple(out, tuple);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Tuple normalized(const Tuple& tuple) {
    Tuple out(tuple);
    if (!out.empty()) {
        const Value base = out.front();
        for (Value& v : out) v -= base;
    }
    return out;
}

}  // namespace admtuple

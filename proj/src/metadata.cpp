#include "mcspai/metadata.hpp"

#include <fstream>
#include <stdexcept>

namespace mcspai {

void write_metadata_file(const Metadata& meta, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    for (const auto& [k, v] : meta) out << k << "=" << v << "\n";
    out.close();
    if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

Metadata read_metadata_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    Metadata meta;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("malformed metadata line: " + line);
        meta[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return meta;
}

}  // namespace mcspai

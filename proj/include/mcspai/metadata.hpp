#ifndef MCSPAI_METADATA_HPP
#define MCSPAI_METADATA_HPP

#include <map>
#include <string>

namespace mcspai {

/// Plain key=value sidecar files (one pair per line, '#' comments).
using Metadata = std::map<std::string, std::string>;

void write_metadata_file(const Metadata& meta, const std::string& path);
Metadata read_metadata_file(const std::string& path);

}  // namespace mcspai

#endif

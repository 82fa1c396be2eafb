#include "unionsub/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace unionsub {

namespace fs = std::filesystem;

void write_dataset(const fs::path& dir, const std::vector<LabeledGraph>& graphs, GraphFileFormat format) {
  fs::create_directories(dir);
  std::ofstream labels(dir / "labels.csv");
  if (!labels) throw std::runtime_error("cannot write " + (dir / "labels.csv").string());
  labels << "filename,label\n";
  for (const auto& item : graphs) {
    std::ofstream out(dir / item.name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / item.name).string());
    out << (format == GraphFileFormat::Json ? to_json(item.graph) : to_edge_list(item.graph));
    labels << item.name << ',' << item.label << '\n';
  }
}

std::vector<LabeledGraph> read_dataset(const fs::path& dir) {
  std::ifstream labels(dir / "labels.csv");
  if (!labels) throw std::runtime_error("missing " + (dir / "labels.csv").string());
  std::vector<LabeledGraph> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(labels, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (lineno == 1 && line.rfind("filename", 0) == 0)) continue;
    auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw ParseError(lineno, "labels.csv: expected \"filename,label\"");
    }
    LabeledGraph item;
    item.name = line.substr(0, comma);
    try {
      item.label = std::stoi(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError(lineno, "labels.csv: bad label '" + line.substr(comma + 1) + "'");
    }
    try {
      item.graph = read_graph_file((dir / item.name).string());
    } catch (const ParseError& e) {
      throw ParseError(e.line(), item.name + ": " + e.what());
    }
    out.push_back(std::move(item));
  }
  return out;
}

std::vector<LabeledGraph> read_corpus(const fs::path& dir, std::vector<std::string>* failures) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename() == "labels.csv") continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LabeledGraph> out;
  for (const auto& f : files) {
    try {
      out.push_back({read_graph_file(f.string()), 0, f.filename().string()});
    } catch (const std::exception& e) {
      if (failures) failures->push_back(f.filename().string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace unionsub

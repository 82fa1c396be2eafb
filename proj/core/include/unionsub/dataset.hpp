#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "unionsub/generators.hpp"

namespace unionsub {

enum class GraphFileFormat { EdgeList, Json };

/// Writes one file per graph plus labels.csv ("filename,label").
void write_dataset(const std::filesystem::path& dir, const std::vector<LabeledGraph>& graphs,
                   GraphFileFormat format = GraphFileFormat::EdgeList);

/// Reads a dataset directory. Entries keep the labels.csv order.
std::vector<LabeledGraph> read_dataset(const std::filesystem::path& dir);

/// Every parseable graph file in `dir` (sorted by name), labels ignored.
/// Files that fail to parse are reported through `failures`.
std::vector<LabeledGraph> read_corpus(const std::filesystem::path& dir,
                                      std::vector<std::string>* failures = nullptr);

}  // namespace unionsub

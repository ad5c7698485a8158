// Copyright 2026 The PathWalk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pathwalk/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <type_traits>
#include <utility>
#include <vector>

#include "pathwalk/common.h"
#include "pathwalk/config.h"

namespace pathwalk::nn {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint IO assumes a little-endian host");

template <typename T>
struct ArrayRef {
  std::string name;
  std::vector<std::size_t> shape;
  std::span<T> values;
};

std::vector<std::size_t> block_shape(const std::string& name, const Parameters<float>& p) {
  const auto& d = p.net.dims;
  if (name == "lstm_fw_w" || name == "lstm_bw_w") return {d.input_dim + d.hidden, 4 * d.hidden};
  if (name == "lstm_fw_b" || name == "lstm_bw_b") return {4 * d.hidden};
  if (name == "out_w") return {2 * d.hidden, d.classes};
  if (name == "out_b") return {d.classes};
  if (name == "node_embedding") return {p.embeddings.node.rows(), p.embeddings.node.cols()};
  return {p.embeddings.edge.rows(), p.embeddings.edge.cols()};
}

// Model is TrainedModel or const TrainedModel; element type follows.
template <typename Model, typename T = std::remove_reference_t<decltype(*std::declval<Model&>().optimizer.m[0].data())>>
std::vector<ArrayRef<T>> arrays(Model& model) {
  std::vector<ArrayRef<T>> out;
  auto blocks = model.params.blocks();
  for (const auto& b : blocks) out.push_back({b.name, block_shape(b.name, model.params), b.values});
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.push_back({"adam_m/" + blocks[i].name, out[i].shape, model.optimizer.m[i]});
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    out.push_back({"adam_v/" + blocks[i].name, out[i].shape, model.optimizer.v[i]});
  }
  return out;
}

void write_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  std::memcpy(bytes, &v, 8);
  out.write(bytes, 8);
}

std::uint64_t read_u64(std::istream& in) {
  char bytes[8];
  in.read(bytes, 8);
  std::uint64_t v = 0;
  std::memcpy(&v, bytes, 8);
  return v;
}

std::ifstream open_and_check_magic(const std::filesystem::path& path, std::string& header_text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open checkpoint");
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kCheckpointMagic, 8) != 0) throw DataError(path.string() + ": not a checkpoint");
  const std::uint64_t header_len = read_u64(in);
  if (!in || header_len > (1u << 30)) throw DataError(path.string() + ": corrupt checkpoint header length");
  header_text.resize(header_len);
  in.read(header_text.data(), static_cast<std::streamsize>(header_len));
  if (!in) throw DataError(path.string() + ": truncated checkpoint header");
  return in;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const TrainedModel& model,
                     const nlohmann::ordered_json& extra) {
  const auto refs = arrays(model);

  nlohmann::ordered_json header;
  header["format_version"] = kCheckpointFormatVersion;
  header["config"] = to_json(model.config);
  header["dims"] = {{"input_dim", model.params.net.dims.input_dim},
                    {"hidden", model.params.net.dims.hidden},
                    {"classes", model.params.net.dims.classes}};
  header["node_count"] = model.params.embeddings.node.rows();
  header["edge_count"] = model.params.embeddings.edge.rows();
  header["graph_fingerprint"] = model.graph_fingerprint;
  header["seed"] = model.config.seed;
  header["adam"] = {{"step", model.optimizer.step},
                    {"lr", model.optimizer.config.learning_rate},
                    {"beta1", model.optimizer.config.beta1},
                    {"beta2", model.optimizer.config.beta2},
                    {"epsilon", model.optimizer.config.epsilon}};
  std::uint64_t offset = 0;
  auto& list = header["arrays"] = nlohmann::ordered_json::array();
  for (const auto& r : refs) {
    list.push_back({{"name", r.name},
                    {"shape", r.shape},
                    {"dtype", "float32"},
                    {"endianness", "little"},
                    {"offset", offset},
                    {"count", r.values.size()}});
    offset += r.values.size() * sizeof(float);
  }
  if (!extra.empty()) header["extra"] = extra;

  const std::string text = header.dump();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError(path.string() + ": cannot write checkpoint");
  out.write(kCheckpointMagic, 8);
  write_u64(out, text.size());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto& r : refs) {
    out.write(reinterpret_cast<const char*>(r.values.data()), static_cast<std::streamsize>(r.values.size_bytes()));
  }
  if (!out) throw DataError(path.string() + ": write failed");
}

nlohmann::json read_checkpoint_header(const std::filesystem::path& path) {
  std::string text;
  open_and_check_magic(path, text);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": malformed checkpoint header: " + e.what());
  }
}

TrainedModel load_checkpoint(const std::filesystem::path& path) {
  std::string text;
  std::ifstream in = open_and_check_magic(path, text);
  const std::string where = path.string() + ": ";
  TrainedModel model;
  try {
    const auto header = nlohmann::json::parse(text);
    if (header.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw DataError(where + "unsupported checkpoint format version");
    }
    model.config = train_config_from_json(header.at("config"));
    ModelDims dims{header.at("dims").at("input_dim").get<std::size_t>(), header.at("dims").at("hidden").get<std::size_t>(),
                   header.at("dims").at("classes").get<std::size_t>()};
    model.num_classes = dims.classes;
    model.graph_fingerprint = header.at("graph_fingerprint").get<std::uint64_t>();
    model.params = Parameters<float>::zeros(dims, header.at("node_count").get<std::size_t>(),
                                            header.at("edge_count").get<std::size_t>());
    AdamConfig adam{header.at("adam").at("lr").get<double>(), header.at("adam").at("beta1").get<double>(),
                    header.at("adam").at("beta2").get<double>(), header.at("adam").at("epsilon").get<double>()};
    model.optimizer = AdamState<float>::create(std::as_const(model.params).blocks(), adam);
    model.optimizer.step = header.at("adam").at("step").get<std::uint64_t>();

    const auto refs = arrays(model);
    const auto& list = header.at("arrays");
    if (list.size() != refs.size()) throw DataError(where + "unexpected number of arrays");
    const auto payload_start = in.tellg();
    for (std::size_t i = 0; i < refs.size(); ++i) {
      const auto& entry = list[i];
      if (entry.at("name").get<std::string>() != refs[i].name ||
          entry.at("shape").get<std::vector<std::size_t>>() != refs[i].shape ||
          entry.at("count").get<std::size_t>() != refs[i].values.size() || entry.at("dtype") != "float32" ||
          entry.at("endianness") != "little") {
        throw DataError(where + "array '" + refs[i].name + "' does not match the header dimensions");
      }
      in.seekg(payload_start + static_cast<std::streamoff>(entry.at("offset").get<std::uint64_t>()));
      in.read(reinterpret_cast<char*>(refs[i].values.data()), static_cast<std::streamsize>(refs[i].values.size_bytes()));
      if (!in) throw DataError(where + "truncated payload in array '" + refs[i].name + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(where + "malformed checkpoint header: " + e.what());
  } catch (const UsageError& e) {
    throw DataError(where + "invalid config in checkpoint: " + e.what());
  }
  return model;
}

}  // namespace pathwalk::nn

#pragma once

#include <optional>
#include <string>

#include "xorcert/generate.hpp"
#include "xorcert/pipeline.hpp"
#include "xorcert/reduce.hpp"

namespace xorcert {

/// Instance JSON:
///   {"kind":"kxor","n":N,"k":K,"constraints":[[v1,...,vk,sign],...]}
///   {"kind":"p2xor","n":N,"ell":L,"constraints":[[part,u,v,sign],...]}
/// A reduced instance may carry "dictionary":{"subset_size":s,"subsets":[[...],...]}.
struct LoadedInstance {
  AnyInstance instance;
  std::optional<SubsetDictionary> dictionary;
};

const char* instance_kind(const AnyInstance& inst);

/// indent < 0 gives compact output.
std::string instance_to_json(const AnyInstance& inst, int indent = -1,
                             const SubsetDictionary* dictionary = nullptr);
LoadedInstance instance_from_json(const std::string& text);

/// SHA-256 of the compact instance JSON without any dictionary.
std::string instance_digest(const AnyInstance& inst);
std::string dictionary_digest(const SubsetDictionary& dictionary);

std::string decomposition_to_json(const Decomposition& dec, int indent = 2);

std::string certificate_to_json(const Certificate& cert, int indent = 2);
Certificate certificate_from_json(const std::string& text);

/// SHA-256 of the compact certificate JSON with the digest field removed.
std::string certificate_digest(const Certificate& cert);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace xorcert

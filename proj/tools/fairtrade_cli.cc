/*
 * Copyright 2026 The Fairtrade Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end. Each subcommand is a thin adapter over the library;
// output is key=value lines, cryptographic bytes are hex.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairtrade/bench.h"
#include "fairtrade/content_store.h"
#include "fairtrade/contract.h"
#include "fairtrade/goods.h"
#include "fairtrade/group.h"
#include "fairtrade/harness.h"
#include "fairtrade/rng.h"
#include "fairtrade/upre.h"

namespace ft = fairtrade;
namespace fs = std::filesystem;

namespace {

// Exit codes.
constexpr int kExitError = 1;
constexpr int kExitRefused = 3;

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitError, "cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void WriteFile(const fs::path& path, std::string_view data) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw CliError(kExitError, "cannot write " + path.string());
  }
  fs::rename(tmp, path);
}

std::unique_ptr<ft::Rng> MakeRng(const std::optional<std::uint64_t>& seed, std::string_view label) {
  if (seed) return std::make_unique<ft::DeterministicRng>(*seed, label);
  return std::make_unique<ft::SystemRng>();
}

std::map<std::string, std::string> ParseRecord(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ft::DecodeError("malformed record line: " + line);
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

std::string RecordField(const std::map<std::string, std::string>& rec, const std::string& key) {
  auto it = rec.find(key);
  if (it == rec.end()) throw ft::DecodeError("record missing " + key);
  return it->second;
}

// Key file: sk=<hex>, pk=<hex> in the upre serialization.
std::string FormatKeyFile(const ft::Group& group, const ft::upre::KeyPair& keys) {
  return "sk=" + ft::ToHex(ft::upre::Serialize(group, keys.sk)) + "\n" +
         "pk=" + ft::ToHex(ft::upre::Serialize(group, keys.pk)) + "\n";
}

ft::upre::KeyPair LoadKeyFile(const ft::Group& group, const fs::path& path) {
  auto rec = ParseRecord(ReadFile(path));
  ft::upre::KeyPair keys;
  keys.sk = ft::upre::DecodePrivateKey(group, ft::FromHex(RecordField(rec, "sk")));
  keys.pk = ft::upre::DecodePublicKey(group, ft::FromHex(RecordField(rec, "pk")));
  if (group.GPow(keys.sk.x1.value) != keys.pk.pk1 || group.GPow(keys.sk.x2.value) != keys.pk.pk2) {
    throw ft::DecodeError("key file: public key does not match private key");
  }
  return keys;
}

ft::contract::Contract LoadContract(const fs::path& path) {
  return ft::contract::Contract::Replay(ft::contract::ParseEventLog(ReadFile(path)));
}

void SaveContract(const fs::path& path, const ft::contract::Contract& c) {
  WriteFile(path, ft::contract::FormatEventLog(c.events()));
}

void PrintState(const ft::contract::ContractState& s) {
  std::cout << "phase=" << ft::contract::PhaseName(s.phase) << "\n"
            << "clock=" << s.clock << "\n"
            << "escrow=" << s.escrowed() << "\n"
            << "request_list_size=" << s.request_list.size() << "\n"
            << "arbitrable=" << (s.arbitrable() ? 1 : 0) << "\n";
  for (const auto& [account, amount] : s.balances) {
    std::cout << "balance." << account << "=" << amount << "\n";
  }
}

void RefuseUnlessOk(ft::contract::Status status) {
  if (status != ft::contract::Status::kOk) {
    throw CliError(kExitRefused, std::string(ft::contract::StatusName(status)));
  }
}

std::vector<std::size_t> ParseSizeList(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(std::stoul(item));
  }
  if (out.empty()) throw CliError(kExitError, "empty --lq list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair trade of digital goods over proxy re-encryption and a simulated escrow contract"};
  app.require_subcommand(1);

  // Shared option storage.
  std::optional<std::uint64_t> seed;
  std::size_t lq = 512, l0 = 256, l1 = 256;
  std::string params_path, out_path, contract_path, key_path, store_root = "store";
  std::string account, ipfs_hash, content_key_path, goods_path, in_path;
  std::int64_t price = 100;
  std::optional<std::int64_t> payment;
  std::uint64_t ticks_timeout = ft::contract::kDefaultTimeout;
  std::uint64_t ticks = 1;
  std::vector<std::string> funds;
  bool corrupt = false, table = false;

  auto* setup = app.add_subcommand("setup", "Generate group parameters");
  setup->add_option("--lq", lq, "Bit length of q");
  setup->add_option("--l0", l0, "Message bit length");
  setup->add_option("--l1", l1, "Padding bit length");
  setup->add_option("--seed", seed, "Deterministic RNG seed");
  setup->add_option("--out", out_path, "Params file")->required();

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  keygen->add_option("--params", params_path)->required();
  keygen->add_option("--seed", seed);
  keygen->add_option("--out", out_path)->required();

  auto* wrap = app.add_subcommand("wrap", "Seal goods and upload them to the content store");
  wrap->add_option("--in", in_path, "Goods file")->required();
  wrap->add_option("--store-root", store_root);
  wrap->add_option("--seed", seed);
  wrap->add_option("--key-out", content_key_path, "Content key file")->required();

  auto* deploy = app.add_subcommand("deploy", "Encrypt the content key, sign and deploy a listing");
  deploy->add_option("--params", params_path)->required();
  deploy->add_option("--seller-key", key_path)->required();
  deploy->add_option("--content-key", content_key_path)->required();
  deploy->add_option("--ipfs-hash", ipfs_hash)->required();
  deploy->add_option("--price", price);
  deploy->add_option("--ticks-timeout", ticks_timeout);
  deploy->add_option("--account", account, "Seller account")->default_val("seller");
  deploy->add_option("--fund", funds, "Genesis balance, account=amount (repeatable)");
  deploy->add_option("--seed", seed);
  deploy->add_option("--out", contract_path, "Contract log")->required();

  auto* buy = app.add_subcommand("buy", "Submit a request and payment");
  buy->add_option("--contract", contract_path)->required();
  buy->add_option("--buyer-key", key_path)->required();
  buy->add_option("--account", account)->required();
  buy->add_option("--payment", payment, "Defaults to the listing price");
  buy->add_option("--seed", seed);

  auto* rekey = app.add_subcommand("rekey", "Answer the active request with a re-encryption key");
  rekey->add_option("--contract", contract_path)->required();
  rekey->add_option("--seller-key", key_path)->required();
  rekey->add_flag("--corrupt", corrupt, "Submit rk+1 instead of rk");

  auto* tick = app.add_subcommand("tick", "Advance the contract clock");
  tick->add_option("--contract", contract_path)->required();
  tick->add_option("-n,--ticks", ticks);

  auto* arbitrate = app.add_subcommand("arbitrate", "Disclose the buyer key and request arbitration");
  arbitrate->add_option("--contract", contract_path)->required();
  arbitrate->add_option("--buyer-key", key_path)->required();
  arbitrate->add_option("--account", account)->required();

  auto* fetch = app.add_subcommand("fetch", "Decrypt the transformed ciphertext and recover the goods");
  fetch->add_option("--contract", contract_path)->required();
  fetch->add_option("--buyer-key", key_path)->required();
  fetch->add_option("--account", account)->required();
  fetch->add_option("--store-root", store_root);
  fetch->add_option("--out", out_path)->required();

  auto* inspect = app.add_subcommand("inspect", "Replay a contract log and print it");
  inspect->add_option("--contract", contract_path)->required();

  std::string seller_strategy = "honest", buyer_strategy = "honest", config_path;
  auto* scenario = app.add_subcommand("run-scenario", "Run a complete sale with chosen strategies");
  scenario->add_option("--seller", seller_strategy);
  scenario->add_option("--buyer", buyer_strategy);
  scenario->add_option("--lq", lq);
  scenario->add_option("--l0", l0);
  scenario->add_option("--l1", l1);
  scenario->add_option("--price", price);
  scenario->add_option("--seed", seed);
  scenario->add_option("--ticks-timeout", ticks_timeout);
  scenario->add_option("--goods", goods_path, "Goods file (default: 4 KiB derived from the seed)");
  scenario->add_option("--config", config_path, "Scenario file");
  scenario->add_option("--out", out_path, "Write the transcript here");

  std::string lq_list = "256,512,1024";
  std::size_t runs = 50;
  auto* bench = app.add_subcommand("bench", "Time each algorithm at several group sizes");
  bench->add_option("--lq", lq_list, "Comma-separated sizes");
  bench->add_option("--runs", runs);
  bench->add_option("--seed", seed);
  bench->add_flag("--table", table, "Human-readable table");

  std::string hash_arg;
  auto* store = app.add_subcommand("store", "Content-addressed store");
  store->require_subcommand(1);
  auto* store_put = store->add_subcommand("put", "Store a file");
  store_put->add_option("file", in_path)->required();
  store_put->add_option("--store-root", store_root);
  auto* store_get = store->add_subcommand("get", "Fetch a blob by hash");
  store_get->add_option("hash", hash_arg)->required();
  store_get->add_option("-o,--out", out_path)->required();
  store_get->add_option("--store-root", store_root);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*setup) {
      auto rng = MakeRng(seed, "setup");
      ft::GroupParams params = ft::SetupParams({lq, l0, l1}, *rng);
      WriteFile(out_path, params.ToText());
      std::cout << params.ToText();
    } else if (*keygen) {
      ft::Group group(ft::GroupParams::FromText(ReadFile(params_path)));
      auto rng = MakeRng(seed, "keygen");
      ft::upre::KeyPair keys = ft::upre::KeyGen(group, *rng);
      WriteFile(out_path, FormatKeyFile(group, keys));
      std::cout << "pk=" << ft::ToHex(ft::upre::Serialize(group, keys.pk)) << "\n";
    } else if (*wrap) {
      std::string goods = ReadFile(in_path);
      auto rng = MakeRng(seed, "wrap");
      ft::goods::WrappedGoods wrapped = ft::goods::WrapGoods(ft::ToBytes(goods), *rng);
      ft::FileBlobStore blobs(store_root);
      ft::ContentHash hash = blobs.Put(wrapped.sealed.Serialize());
      WriteFile(content_key_path, ft::ToHex(wrapped.key.bytes) + "\n");
      std::cout << "ipfs_hash=" << hash.ToHex() << "\n"
                << "sealed_bytes=" << wrapped.sealed.Serialize().size() << "\n";
    } else if (*deploy) {
      ft::Group group(ft::GroupParams::FromText(ReadFile(params_path)));
      ft::upre::KeyPair seller = LoadKeyFile(group, key_path);
      std::string key_hex = ReadFile(content_key_path);
      while (!key_hex.empty() && (key_hex.back() == '\n' || key_hex.back() == '\r')) key_hex.pop_back();
      ft::goods::ContentKey key = ft::goods::ContentKeyFromHex(key_hex);
      auto rng = MakeRng(seed, "deploy");
      ft::contract::Listing listing = ft::contract::PrepareListing(
          group, seller, ft::ContentHash::FromHex(ipfs_hash), key, price, account, *rng);
      ft::contract::Genesis genesis;
      genesis.timeout = ticks_timeout;
      for (const std::string& f : funds) {
        auto eq = f.find('=');
        if (eq == std::string::npos) throw CliError(kExitError, "--fund expects account=amount");
        genesis.balances[f.substr(0, eq)] = std::stoll(f.substr(eq + 1));
      }
      ft::contract::Contract c = ft::contract::Contract::Deploy(std::move(listing), std::move(genesis));
      SaveContract(contract_path, c);
      std::cout << "deployed=1\n";
      PrintState(c.state());
    } else if (*buy) {
      ft::contract::Contract c = LoadContract(contract_path);
      ft::upre::KeyPair buyer = LoadKeyFile(c.group(), key_path);
      const ft::contract::Listing& listing = c.state().listing;
      if (!ft::SchnorrVerify(c.group(), listing.sig,
                             ft::contract::ListingMessage(c.group(), listing.ct, listing.goods_hash))) {
        throw CliError(kExitRefused, "listing signature does not verify");
      }
      auto rng = MakeRng(seed, "buy");
      ft::upre::Request request = ft::upre::MakeRequest(c.group(), buyer, listing.seller_pk, *rng);
      ft::contract::Status status =
          c.SubmitRequest(account, request, payment.value_or(listing.price));
      if (status == ft::contract::Status::kOk || status == ft::contract::Status::kRequestRejected) {
        SaveContract(contract_path, c);
      }
      RefuseUnlessOk(status);
      std::cout << "request=" << ft::ToHex(ft::upre::Serialize(c.group(), request)) << "\n";
      PrintState(c.state());
    } else if (*rekey) {
      ft::contract::Contract c = LoadContract(contract_path);
      ft::upre::KeyPair seller = LoadKeyFile(c.group(), key_path);
      const ft::contract::ContractState& s = c.state();
      if (!s.order) throw CliError(kExitRefused, "no active order");
      ft::Result<ft::upre::ReKey> rk =
          ft::upre::ReKeyGen(c.group(), seller.sk, s.order->request, s.listing.ct.masked);
      if (!rk) throw CliError(kExitRefused, std::string(ft::RejectName(rk.reject())));
      ft::upre::ReKey submitted = rk.value();
      if (corrupt) submitted.key.value = submitted.key.value % (c.group().q() - 1) + 1;
      ft::contract::Status status = c.SubmitReKey(submitted);
      if (status == ft::contract::Status::kOk || status == ft::contract::Status::kReKeyInvalid) {
        SaveContract(contract_path, c);
      }
      RefuseUnlessOk(status);
      std::cout << "rk=" << ft::ToHex(ft::upre::Serialize(c.group(), submitted)) << "\n";
      PrintState(c.state());
    } else if (*tick) {
      ft::contract::Contract c = LoadContract(contract_path);
      c.Advance(ticks);
      SaveContract(contract_path, c);
      PrintState(c.state());
    } else if (*arbitrate) {
      ft::contract::Contract c = LoadContract(contract_path);
      ft::upre::KeyPair buyer = LoadKeyFile(c.group(), key_path);
      ft::contract::ArbitrationOutcome outcome = c.ApplyArbitration(account, buyer.sk);
      RefuseUnlessOk(outcome.status);
      SaveContract(contract_path, c);
      std::cout << "at_fault=" << ft::contract::PartyName(outcome.verdict->at_fault) << "\n"
                << "refund_issued=" << (outcome.verdict->refund_issued ? 1 : 0) << "\n";
      PrintState(c.state());
    } else if (*fetch) {
      ft::contract::Contract c = LoadContract(contract_path);
      ft::upre::KeyPair buyer = LoadKeyFile(c.group(), key_path);
      const ft::contract::ContractState& s = c.state();
      auto it = s.transformed.find(account);
      if (it == s.transformed.end()) throw CliError(kExitRefused, "no transformed ciphertext for " + account);
      ft::Result<ft::BitString> m =
          ft::upre::DecryptTransformed(c.group(), buyer.sk, s.listing.seller_pk, it->second);
      if (!m) throw CliError(kExitRefused, std::string(ft::RejectName(m.reject())));
      ft::FileBlobStore blobs(store_root);
      std::optional<ft::Bytes> sealed = blobs.Get(s.listing.goods_hash);
      if (!sealed) throw CliError(kExitError, "goods blob missing from store");
      std::optional<ft::Bytes> plain = ft::goods::UnwrapGoods(
          ft::goods::SealedGoods::Parse(*sealed), ft::goods::DecodeKey(m.value()));
      if (!plain) throw CliError(kExitRefused, "goods failed authentication");
      WriteFile(out_path, std::string(plain->begin(), plain->end()));
      std::cout << "goods_bytes=" << plain->size() << "\n";
    } else if (*inspect) {
      ft::contract::Contract c = LoadContract(contract_path);
      std::cout << ft::contract::FormatEventLog(c.events());
      std::cout << "replay=ok\n";
      PrintState(c.state());
    } else if (*scenario) {
      ft::harness::ScenarioConfig config;
      if (!config_path.empty()) {
        ft::harness::ScenarioFile file = ft::harness::ParseScenarioFile(ReadFile(config_path));
        config = file.config;
        lq = file.lq;
        l0 = file.l0;
        l1 = file.l1;
        if (!file.goods_path.empty()) goods_path = file.goods_path;
      } else {
        config.seller = ft::harness::Strategy::Seller(ft::harness::ParseBehavior(seller_strategy)).behavior;
        config.buyer = ft::harness::Strategy::Buyer(ft::harness::ParseBehavior(buyer_strategy)).behavior;
        config.price = price;
        config.seed = seed.value_or(1);
        config.timeout = ticks_timeout;
      }
      ft::DeterministicRng param_rng(config.seed, "scenario/params");
      ft::GroupParams params = ft::SetupParams({lq, l0, l1}, param_rng);
      ft::Bytes goods = goods_path.empty() ? ft::DeterministicRng(config.seed, "scenario/goods").RandomBytes(4096)
                                           : ft::ToBytes(ReadFile(goods_path));
      ft::harness::Transcript t = ft::harness::RunScenario(params, goods, config);
      ft::harness::AuditReport audit = ft::harness::FairnessAudit(t);
      if (!out_path.empty()) WriteFile(out_path, t.Serialize());
      std::cout << "final_phase=" << ft::contract::PhaseName(t.final_phase) << "\n"
                << "interactions=" << ft::harness::CountInteractions(t) << "\n"
                << "verdict=" << (t.verdict ? ft::contract::PartyName(t.verdict->at_fault) : "none") << "\n"
                << "buyer_recovered_goods=" << (t.buyer_recovered_goods ? 1 : 0) << "\n"
                << "fairness=" << (audit.pass ? "pass" : "violation") << "\n"
                << "fairness_branch=" << audit.final_branch() << "\n";
      for (const std::string& v : audit.violations) std::cout << "violation=" << v << "\n";
      for (const auto& [acct, amount] : t.final_balances) std::cout << "balance." << acct << "=" << amount << "\n";
      if (!audit.pass) return kExitError;
    } else if (*bench) {
      ft::bench::BenchOptions options;
      options.lq = ParseSizeList(lq_list);
      options.runs = runs;
      if (seed) options.seed = *seed;
      ft::bench::BenchReport report = ft::bench::RunBench(options);
      std::cout << (table ? report.ToTable() : report.ToKeyValue());
    } else if (*store_put) {
      ft::FileBlobStore blobs(store_root);
      std::string data = ReadFile(in_path);
      std::cout << "ipfs_hash=" << blobs.Put(ft::ToBytes(data)).ToHex() << "\n";
    } else if (*store_get) {
      ft::FileBlobStore blobs(store_root);
      std::optional<ft::Bytes> data = blobs.Get(ft::ContentHash::FromHex(hash_arg));
      if (!data) throw CliError(kExitRefused, "missing " + hash_arg);
      WriteFile(out_path, std::string(data->begin(), data->end()));
      std::cout << "bytes=" << data->size() << "\n";
    }
  } catch (const CliError& e) {
    std::cerr << "error=" << e.what() << "\n";
    return e.code();
  } catch (const ft::contract::DeployError& e) {
    std::cerr << "error=deploy rejected: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error=" << e.what() << "\n";
    return kExitError;
  }
  return 0;
}

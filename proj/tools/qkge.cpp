// Copyright 2026 The qkge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line entry point.  Parsing errors exit 2, command data errors
// exit 1; see cli/commands.hpp for the command semantics.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qkge/baselines/baselines.hpp"
#include "qkge/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"knowledge-graph embeddings on simulated quantum circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "qkge 0.1.0");

  const std::map<std::string, qkge::ClassicalLoss> loss_map{
      {"mse", qkge::ClassicalLoss::mse},
      {"logistic", qkge::ClassicalLoss::logistic}};

  qkge::TrainOptions topts;
  CLI::App* train = app.add_subcommand("train", "train a model");
  train->add_option("dataset,--dataset", topts.dataset,
                    "dataset path or name under $QKGE_DATA_DIR")
      ->required();
  train->add_option("-m,--model", topts.model,
                    "qce, fqce, rescal, distmult, complex, or tucker")
      ->capture_default_str();
  train->add_option("-o,--out", topts.out_dir, "output directory")
      ->capture_default_str();
  train->add_option("--qubits", topts.n_qubits, "circuit width, quantum models")
      ->capture_default_str();
  train->add_option("--rank", topts.rank, "embedding rank, classical models")
      ->capture_default_str();
  train->add_option("--lr", topts.config.learning_rate, "SGD learning rate")
      ->capture_default_str();
  train->add_option("--batch", topts.config.batch_size, "batch size")
      ->capture_default_str();
  train->add_option("--epochs", topts.config.max_epochs, "epoch cap")
      ->capture_default_str();
  train
      ->add_option("--eval-every", topts.config.eval_every,
                   "validation cadence in epochs")
      ->capture_default_str();
  train
      ->add_option("--patience", topts.config.patience,
                   "non-improving validations before stopping")
      ->capture_default_str();
  train->add_option("--kappa", topts.config.kappa, "loss exponent 2*kappa")
      ->capture_default_str();
  train
      ->add_option("--negatives", topts.config.negatives_per_positive,
                   "negative samples per positive")
      ->capture_default_str();
  train
      ->add_option("--init-range", topts.config.init_range,
                   "gate angles ~ U[-r, r]")
      ->capture_default_str();
  train
      ->add_option("--dropout", topts.config.dropout,
                   "per-slot gate dropout probability, quantum only")
      ->capture_default_str();
  train
      ->add_option("--noise", topts.config.noise_mu,
                   "training parameter-noise strength mu, quantum only")
      ->capture_default_str();
  train->add_flag("--noise-as-variance", topts.config.noise_as_variance,
                  "read the noise scale as a variance");
  train
      ->add_option("--loss", topts.config.classical_loss_kind,
                   "classical loss: mse or logistic")
      ->transform(CLI::CheckedTransformer(loss_map, CLI::ignore_case));
  train
      ->add_option("--lambda", topts.config.lambda,
                   "L2 regularization, classical models")
      ->capture_default_str();
  train->add_option("--seed", topts.config.seed, "root RNG seed")
      ->capture_default_str();
  train->add_option("--threads", topts.config.threads, "evaluation threads")
      ->capture_default_str();

  qkge::EvalCmdOptions eopts;
  CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint");
  eval->add_option("checkpoint,--checkpoint", eopts.checkpoint, "checkpoint file")
      ->required();
  eval->add_option("dataset,--dataset", eopts.dataset,
                   "dataset path or name under $QKGE_DATA_DIR")
      ->required();
  eval->add_option("-o,--out", eopts.out_dir, "output directory")
      ->capture_default_str();
  eval->add_option("--split", eopts.split, "train, valid, or test")
      ->capture_default_str();
  eval->add_option("--histogram", eopts.histogram_bins,
                   "also export a score histogram with this many bins");
  eval->add_flag("--pessimistic", eopts.pessimistic,
                 "count ties when ranking");
  eval->add_option("--noise", eopts.noise_mu,
                   "perturb parameters before scoring, quantum only");
  eval->add_flag("--noise-as-variance", eopts.noise_as_variance,
                 "read the noise scale as a variance");
  eval->add_option("--seed", eopts.seed, "perturbation RNG seed")
      ->capture_default_str();
  eval->add_option("--threads", eopts.threads, "evaluation threads")
      ->capture_default_str();

  qkge::InferOptions iopts;
  CLI::App* infer =
      app.add_subcommand("infer", "amplitude-amplified candidate retrieval");
  infer->add_option("dataset,--dataset", iopts.dataset,
                    "dataset path or name under $QKGE_DATA_DIR")
      ->required();
  infer->add_option("-c,--checkpoint", iopts.checkpoint,
                    "trained quantum checkpoint");
  infer->add_option("-o,--out", iopts.out_dir, "output directory")
      ->capture_default_str();
  infer->add_option("-s,--subject", iopts.subject, "subject entity name");
  infer->add_option("-p,--predicate", iopts.predicate, "predicate name");
  infer->add_option("--solution,--solutions", iopts.solutions,
                    "idealistic solution entity, repeatable");
  infer->add_flag("--idealistic", iopts.idealistic,
                  "analytic state with the given solutions, no model");
  infer->add_option("--iterations", iopts.iterations,
                    "amplification rounds, negative selects the closed form")
      ->capture_default_str();
  infer->add_option("--shots", iopts.shots, "measurement shots")
      ->capture_default_str();
  infer->add_option("--top-k", iopts.top_k, "candidates to report")
      ->capture_default_str();
  infer->add_option("--seed", iopts.seed, "sampling RNG seed")
      ->capture_default_str();

  qkge::ExportOptions xopts;
  CLI::App* exp =
      app.add_subcommand("export-embeddings", "dump entity embeddings as CSV");
  exp->add_option("checkpoint,--checkpoint", xopts.checkpoint, "checkpoint file")
      ->required();
  exp->add_option("-d,--dataset", xopts.dataset,
                  "dataset for the entity-name column");
  exp->add_option("-o,--out", xopts.out_dir, "output directory")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 2;
  }

  try {
    if (train->parsed()) return qkge::cmd_train(topts);
    if (eval->parsed()) return qkge::cmd_eval(eopts);
    if (infer->parsed()) return qkge::cmd_infer(iopts);
    if (exp->parsed()) return qkge::cmd_export_embeddings(xopts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

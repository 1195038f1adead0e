"""Tokenizer and encoder construction.

The "tiny" path builds a whitespace word-level tokenizer from the training
texts and a small randomly initialized bidirectional encoder, so the whole
harness runs offline. Marker tokens are registered as special vocabulary
either way, which guarantees each marker maps to exactly one id and is never
split by the pretokenizer.
"""

from __future__ import annotations

import torch
from tokenizers import Tokenizer
from tokenizers.models import WordLevel
from tokenizers.pre_tokenizers import WhitespaceSplit
from tokenizers.processors import TemplateProcessing
from transformers import (
    AutoModelForSequenceClassification,
    AutoTokenizer,
    BertConfig,
    BertForSequenceClassification,
    PreTrainedTokenizerFast,
)

from .config import TrainConfig

PAD, UNK, CLS, SEP = "[PAD]", "[UNK]", "[CLS]", "[SEP]"


def build_wordlevel_tokenizer(texts, markers) -> PreTrainedTokenizerFast:
    vocab = {PAD: 0, UNK: 1, CLS: 2, SEP: 3}
    marker_set = set(markers)
    for text in texts:
        for token in text.split():
            if token not in vocab and token not in marker_set:
                vocab[token] = len(vocab)
    core = Tokenizer(WordLevel(vocab, unk_token=UNK))
    core.pre_tokenizer = WhitespaceSplit()
    core.post_processor = TemplateProcessing(
        single=f"{CLS} $A {SEP}",
        pair=f"{CLS} $A {SEP} $B:1 {SEP}:1",
        special_tokens=[(CLS, vocab[CLS]), (SEP, vocab[SEP])],
    )
    tokenizer = PreTrainedTokenizerFast(
        tokenizer_object=core,
        pad_token=PAD,
        unk_token=UNK,
        cls_token=CLS,
        sep_token=SEP,
    )
    tokenizer.add_tokens(list(markers), special_tokens=True)
    return tokenizer


def build_tiny_model(vocab_size: int, max_seq_len: int, seed: int):
    torch.manual_seed(seed)
    config = BertConfig(
        vocab_size=vocab_size,
        hidden_size=64,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=256,
        max_position_embeddings=max_seq_len,
        num_labels=2,
        pad_token_id=0,
    )
    return BertForSequenceClassification(config)


def load_assets(config: TrainConfig, train_texts, markers):
    """Return (tokenizer, model_factory) for the configured model."""
    if config.model_name == "tiny":
        tokenizer = build_wordlevel_tokenizer(train_texts, markers)

        def factory(seed: int):
            return build_tiny_model(len(tokenizer), config.max_seq_len, seed)

    else:
        tokenizer = AutoTokenizer.from_pretrained(config.model_name)
        tokenizer.add_tokens(list(markers), special_tokens=True)

        def factory(seed: int):
            torch.manual_seed(seed)
            model = AutoModelForSequenceClassification.from_pretrained(
                config.model_name, num_labels=2
            )
            model.resize_token_embeddings(len(tokenizer))
            return model

    return tokenizer, factory

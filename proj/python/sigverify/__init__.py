"""Offline signature verification with LPQ and wavelet features."""

from ._sigverify import (
    DEFAULT_K,
    SigverifyError,
    WriterProfile,
    cli,
    enroll,
    evaluate,
    extract_features,
    load_profiles,
    lpq_descriptor,
    otsu_threshold,
    preprocess,
    read_image,
    save_profiles,
    synth_corpus,
    train_ocsvm,
    wavelet_descriptor,
    write_pgm,
)

__all__ = [
    "DEFAULT_K",
    "SigverifyError",
    "WriterProfile",
    "cli",
    "enroll",
    "evaluate",
    "extract_features",
    "load_profiles",
    "lpq_descriptor",
    "otsu_threshold",
    "preprocess",
    "read_image",
    "save_profiles",
    "synth_corpus",
    "train_ocsvm",
    "wavelet_descriptor",
    "write_pgm",
]

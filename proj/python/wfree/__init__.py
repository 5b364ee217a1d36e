import json

from ._wfree import (
    WfreeError,
    Report,
    catalog_keys,
    character_oracle,
    check_coset_duality,
    check_gram_duality,
    check_homomorphism,
    check_ks,
    check_rank1_ff_duality,
    check_resolution,
    degeneracy_constants,
    delta_conformal,
    dual_level,
    norm_degeneracy,
    run_command,
)


def cli(*args):
    """Run a command line and return (exit code, stdout, stderr)."""
    return run_command([str(a) for a in args])


def report_json(*args):
    code, out, err = cli(*args, "--format", "json")
    if code not in (0, 1):
        raise ValueError(err.strip())
    return code, json.loads(out)

import json
import logging
import sys

from dotenv import load_dotenv
load_dotenv()

import click

from rsxf import __version__
from rsxf.config import DEFAULT_M, DEFAULT_T, LOG_LEVEL
from rsxf.errors import RsxfError

logger = logging.getLogger("rsxf.cli")
logging.basicConfig(level=LOG_LEVEL)


def _run(action, *args, **kwargs):
    try:
        return action(*args, **kwargs)
    except RsxfError as e:
        logger.error("%s failed: %s", action.__name__, e)
        raise click.ClickException(str(e)) from e
    except OSError as e:
        raise click.ClickException(f"{e.strerror}: {e.filename}") from e


@click.group()
@click.version_option(version=__version__, prog_name="rsxf")
def cli():
    """Reed-Solomon codec over GF(2^m) built on additive FFTs."""


@cli.command()
@click.argument("in_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_path", type=click.Path(dir_okay=False))
@click.option("--m", "m", type=click.IntRange(2, 16), default=DEFAULT_M, show_default=True, help="Field dimension.")
@click.option("--t", "t", type=click.IntRange(1, 15), default=DEFAULT_T, show_default=True, help="log2 of the parity count.")
def encode(in_path, out_path, m, t):
    """Encode IN_PATH into an RSXF container."""
    from tools.container import encode_file

    summary = _run(encode_file, in_path, out_path, m, t)
    click.echo(f"encoded {summary['payload_len']} bytes into {summary['chunks']} chunk(s)")


@cli.command()
@click.argument("in_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_path", type=click.Path(dir_okay=False))
@click.option("--errors", type=click.IntRange(0), default=0, show_default=True, help="Symbol errors per chunk.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for positions and values.")
def corrupt(in_path, out_path, errors, seed):
    """Copy a container with ERRORS random symbol errors in every chunk."""
    from tools.container import corrupt_file

    summary = _run(corrupt_file, in_path, out_path, errors, seed)
    click.echo(f"corrupted {summary['chunks']} chunk(s) with {errors} error(s) each")


@cli.command()
@click.argument("in_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("out_path", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print the per-chunk report as JSON.")
def decode(in_path, out_path, as_json):
    """Decode an RSXF container into OUT_PATH; exits 1 if any chunk fails."""
    from tools.container import decode_file

    summary = _run(decode_file, in_path, out_path)
    if as_json:
        click.echo(json.dumps(summary, indent=2))
    else:
        for chunk in summary["chunks"]:
            status = f"{chunk['errors']} error(s) corrected" if chunk["ok"] else f"FAILED ({chunk['reason']})"
            click.echo(f"chunk {chunk['index']}: {status}")
        click.echo(f"wrote {summary['payload_len']} bytes")
    if summary["failed_chunks"]:
        logger.warning("chunks %s could not be decoded", summary["failed_chunks"])
        sys.exit(1)


@cli.command()
@click.option("--m", "m", type=click.IntRange(2, 16), default=DEFAULT_M, show_default=True)
@click.option("--t", "t", type=click.IntRange(1, 15), default=DEFAULT_T, show_default=True)
@click.option("--trials", type=click.IntRange(1), default=3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--scaling/--no-scaling", default=True, show_default=True, help="Time decodes at rate 1/2 for m = 10 .. 16.")
@click.option("--baseline/--no-baseline", default=True, show_default=True, help="Compare with the quadratic decoder at m = 12.")
def bench(m, t, trials, seed, scaling, baseline):
    """Report encode/decode throughput, op counts and decode-time scaling."""
    from tools.bench import SCALING_MS, format_report, run_bench

    report = _run(
        run_bench,
        m,
        t,
        trials,
        seed,
        scaling_ms=SCALING_MS if scaling else None,
        baseline_m=12 if baseline else None,
    )
    click.echo(format_report(report))


@cli.command()
@click.option("--trials", type=click.IntRange(1), default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def selftest(trials, seed):
    """Run the oracle-equivalence checks; exits 0 iff all pass."""
    from evals.run_selftest import SelftestRunner

    if not SelftestRunner(trials=trials, seed=seed).run():
        sys.exit(1)


if __name__ == "__main__":
    cli()

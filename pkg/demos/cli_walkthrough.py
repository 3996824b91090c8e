"""A tour of the ``nlca`` command line on the files in ``demos/algebras``.

Each command is run in-process and printed with its exit status.  Run with
``python demos/cli_walkthrough.py`` from the repository root or anywhere.
"""

import contextlib
import io
import shlex
from pathlib import Path

from nlca.cli import main

HERE = Path(__file__).resolve().parent / "algebras"


def run(command: str) -> None:
    argv = [str(HERE / a) if (HERE / a).is_file() else a for a in shlex.split(command)]
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stderr(err):
        code = main(argv, out=out)
    print(f"$ nlca {command}")
    print(out.getvalue() + err.getvalue(), end="")
    print(f"[exit {code}]\n")


run("check cur_simple3.alg")
run("check rank2_ii.alg --module rank2_ii_module.mod")
run("check rank2_i_g1.alg")             # the last-slot skew relation fails: exit 1
run("check plucker_bad.alg --machine")  # Filippov fails, one JSON record per check
run("bracket cur_simple3.alg d*e1 e2 e3")
run("bracket rank2_ii.alg d*e1 e1 e2")
run("bracket cur_simple3.alg --ann 2 e1[1,0] e2[0,1] e3[1,1]")
run("kprod rank2_ii.alg 'e1 e1 e2'")
run("annihilate rank2_ii.alg --p 1 --max-degree 2")
run("cohomology rank2_ii.alg --cochain rank2_ii_cochain.coc")
run("cohomology rank2_ii.alg --q 2 --trials 2")
run("phi rank2_ii.alg --cochain rank2_ii_cochain.coc")
run("plucker --matrix 4x4 --entries '0,1=1 2,3=1'")
run("plucker --entries '0,1,2; -1,0,3; -2,-3,0'")
run("pseudo rank2_ii.alg")
run("check no_such_file.alg")           # exit 4
run("bracket rank2_ii.alg e1 e1")       # wrong arity: exit 2
run("plucker --entries '0,1=x'")       # malformed entry: exit 3

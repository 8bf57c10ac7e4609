import pytest

from vericlassics import faults
from vericlassics.contracts import ContractMode, using
from vericlassics.fixtures import run_fixtures
from vericlassics.fuzzing import run_fuzz

# mutation -> (fuzz problem, label a contract reports in Assert mode)
EXPECTED = {
    "heap-child-flip": ("heap", "heapifyDownInv"),
    "tombstone-as-nil": ("hashset", "countingLemma"),
    "bst-skip-restore": ("treeset", "Valid"),
    "gs-skip-reject": ("match", "I3"),
    "euler-splice-off-by-one": ("euler", "isEulerCircuit"),
}


def test_catalogue_matches():
    assert set(EXPECTED) == set(faults.MUTATIONS)


def test_unknown_mutation():
    with pytest.raises(KeyError):
        with faults.inject("nope"):
            pass


def test_inject_is_scoped():
    with faults.inject("heap-child-flip"):
        assert faults.enabled("heap-child-flip")
    assert not faults.enabled("heap-child-flip")


@pytest.mark.parametrize("mutation", sorted(EXPECTED))
def test_contract_catches_mutation(mutation):
    problem, label = EXPECTED[mutation]
    with using(ContractMode.ASSERT), faults.inject(mutation):
        out = run_fuzz(problem, 1, 300)
    assert not out.ok
    assert label in str(out.failure[1].report.actual)


@pytest.mark.parametrize("mutation", sorted(EXPECTED))
def test_oracle_catches_mutation_without_contracts(mutation):
    problem, _ = EXPECTED[mutation]
    with using(ContractMode.OFF), faults.inject(mutation):
        out = run_fuzz(problem, 1, 300)
    assert not out.ok
    assert "ContractViolation" not in str(out.failure[1].report.actual)


def test_pristine_build_passes_fixtures():
    assert all(r.passed for r in run_fixtures())

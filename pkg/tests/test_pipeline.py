import pytest

from engine.errors import PipelineError
from engine.intervals import cone, delete, dual, reduce, skeleton
from modules.pipeline import VERBS, Stage, parse_pipeline, run_pipeline


def test_parse_stages():
    stages = parse_pipeline("dual | delete 3 | skeleton 1 2 | shift 1 2")
    assert stages == [
        Stage("dual", ()),
        Stage("delete", (3,)),
        Stage("skeleton", (1, 2)),
        Stage("shift", (1, 2)),
    ]
    assert str(stages[2]) == "skeleton 1 2"


def test_reduce_theta_gives_example(phi, theta):
    assert run_pipeline(theta, "reduce 3") == phi


def test_stages_compose_in_order(phi):
    assert run_pipeline(phi, "dual | delete 2") == delete(dual(phi), 2)
    assert run_pipeline(phi, "cone 7 | skeleton 3 4") == skeleton(cone(phi, 7), 3, 4)
    assert run_pipeline(phi, "DUAL | dual") == phi


def test_component_stage(theta):
    avoiding = run_pipeline(theta, "reduce 3 | component 1 3")
    containing = run_pipeline(theta, "reduce 3 | component 2 3")
    assert avoiding.faces | containing.faces == reduce(theta, 3).faces
    assert not avoiding.faces & containing.faces


@pytest.mark.parametrize(
    "text",
    [
        "",
        "dual |",
        "flip 2",
        "delete",
        "delete 1 2",
        "delete x",
        "shift",
    ],
)
def test_malformed_pipelines(text):
    with pytest.raises(PipelineError):
        parse_pipeline(text)


def test_bad_component_index(theta):
    with pytest.raises(PipelineError):
        run_pipeline(theta, "component 3 3")


def test_parse_fails_before_any_work(phi, mocker):
    spy = mocker.Mock(side_effect=dual)
    mocker.patch.dict(VERBS, {"dual": (0, spy)})
    with pytest.raises(PipelineError):
        run_pipeline(phi, "dual | nope")
    assert spy.call_count == 0

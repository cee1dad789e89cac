import pytest
from hypothesis import given
from hypothesis import strategies as st

from botlink.errors import SchedulingInPast
from botlink.events import EventKind, EventQueue


def test_pop_orders_by_timestamp():
    q = EventQueue()
    q.schedule(5, EventKind.CUSTOM)
    q.schedule(3, EventKind.CUSTOM)
    assert q.pop().at_ns == 3
    assert q.pop().at_ns == 5


def test_same_timestamp_same_kind_pops_in_insertion_order():
    q = EventQueue()
    first = q.schedule(7, EventKind.CUSTOM, tag="a")
    second = q.schedule(7, EventKind.CUSTOM, tag="b")
    assert first.seq < second.seq
    assert q.pop().tag == "a"
    assert q.pop().tag == "b"


def test_same_timestamp_physics_step_precedes_arrival():
    # scheduled in the opposite order on purpose
    q = EventQueue()
    q.schedule(10, EventKind.PACKET_ARRIVAL)
    q.schedule(10, EventKind.PHYSICS_STEP)
    q.schedule(10, EventKind.TRACE_SAMPLE)
    q.schedule(10, EventKind.ASSOCIATION_SCAN)
    kinds = [q.pop().kind for _ in range(4)]
    assert kinds == [
        EventKind.PHYSICS_STEP,
        EventKind.ASSOCIATION_SCAN,
        EventKind.PACKET_ARRIVAL,
        EventKind.TRACE_SAMPLE,
    ]


def test_scheduling_before_watermark_raises():
    q = EventQueue()
    q.schedule(2, EventKind.CUSTOM)
    q.pop()
    assert q.watermark_ns == 2
    with pytest.raises(SchedulingInPast):
        q.schedule(1, EventKind.CUSTOM)


def test_scheduling_at_watermark_is_allowed():
    q = EventQueue()
    q.schedule(2, EventKind.CUSTOM)
    q.pop()
    q.schedule(2, EventKind.CUSTOM)
    assert q.pop().at_ns == 2


def test_peek_time():
    q = EventQueue()
    assert q.peek_time() is None
    q.schedule(9, EventKind.CUSTOM)
    q.schedule(4, EventKind.CUSTOM)
    assert q.peek_time() == 4
    assert len(q) == 2


@given(
    st.lists(
        st.tuples(
            st.integers(min_value=0, max_value=1000),
            st.sampled_from(list(EventKind)),
        ),
        max_size=200,
    )
)
def test_pop_order_is_total_and_monotone(items):
    q = EventQueue()
    for at, kind in items:
        q.schedule(at, kind)
    popped = [q.pop() for _ in range(len(q))]
    times = [e.at_ns for e in popped]
    assert times == sorted(times)
    # within one timestamp and phase, seq must increase
    for a, b in zip(popped, popped[1:]):
        if a.at_ns == b.at_ns and a.kind is b.kind:
            assert a.seq < b.seq


@given(
    st.lists(st.integers(min_value=0, max_value=100), min_size=1, max_size=50),
    st.lists(st.integers(min_value=0, max_value=100), max_size=50),
)
def test_watermark_rejects_only_strictly_past(first_batch, second_batch):
    q = EventQueue()
    for at in first_batch:
        q.schedule(at, EventKind.CUSTOM)
    q.pop()
    mark = q.watermark_ns
    for at in second_batch:
        if at < mark:
            with pytest.raises(SchedulingInPast):
                q.schedule(at, EventKind.CUSTOM)
        else:
            q.schedule(at, EventKind.CUSTOM)

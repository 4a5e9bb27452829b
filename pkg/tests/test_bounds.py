import pytest

from tcbounds import groupexpr
from tcbounds.bounds import (
    borromean_case_study,
    borromean_presentation,
    complementary_certificate,
    free_product_bound,
    higman_case_study,
    higman_presentation,
    tc_report,
    verify_raag_retraction,
    verify_retraction_certificate,
    verify_split_extension_certificate,
)
from tcbounds.certificates import (
    BoundReport,
    CertStep,
    CertificateError,
    DisjointnessCertificate,
    Provenance,
)
from tcbounds.presentations import FreeHom, Presentation
from tcbounds.raag import SimpleGraph
from tcbounds.words import generator, identity, parse_word


class TestCertificateRecords:
    def test_cited_step_needs_citation(self):
        with pytest.raises(CertificateError):
            CertStep("some fact", "cited")

    def test_unknown_status(self):
        with pytest.raises(CertificateError):
            CertStep("some fact", "assumed")

    def test_unknown_variant(self):
        step = CertStep("ok", "machine-verified")
        with pytest.raises(CertificateError):
            DisjointnessCertificate("vibes", "A", "B", (step,))

    def test_empty_steps_rejected(self):
        with pytest.raises(CertificateError):
            DisjointnessCertificate("retraction", "A", "B", ())

    def test_fully_machine_verified(self):
        mv = CertStep("ok", "machine-verified")
        cited = CertStep("fact", "cited", "somewhere")
        assert DisjointnessCertificate("retraction", "A", "B", (mv,)).fully_machine_verified
        assert not DisjointnessCertificate(
            "trusted-chain", "A", "B", (mv, cited)
        ).fully_machine_verified

    def test_report_interval_validated(self):
        with pytest.raises(CertificateError):
            BoundReport("G", 5, 4, (), ())


PATH3 = SimpleGraph.from_edges(3, [(1, 2), (2, 3)])


class TestRetractionVerifier:
    def test_raag_coordinate_retraction(self):
        cert = verify_raag_retraction(PATH3, [1], [2, 3])
        assert cert.variant == "retraction"
        assert cert.fully_machine_verified
        assert len(cert.steps) == 3

    def test_non_homomorphism_rejected(self):
        # the map x -> 1, y -> e_1 does not kill the relator x y x^-1 y^-2
        pres = Presentation.from_strings(["x", "y"], ["x y x^-1 y^-2"])
        with pytest.raises(CertificateError, match="not a homomorphism"):
            verify_retraction_certificate(pres, ["x"], ["y"],
                                          {"x": (0,), "y": (1,)})

    def test_not_identity_on_b(self):
        pres = Presentation(("x", "y"), ())
        with pytest.raises(CertificateError, match="identity on B"):
            verify_retraction_certificate(pres, ["x"], ["y"],
                                          {"x": (0,), "y": (2,)})

    def test_does_not_kill_a(self):
        pres = Presentation(("x", "y"), ())
        with pytest.raises(CertificateError, match="kill A"):
            verify_retraction_certificate(pres, ["x"], ["y"],
                                          {"x": (1,), "y": (1,)})

    def test_missing_image(self):
        pres = Presentation(("x", "y"), ())
        with pytest.raises(CertificateError, match="no image"):
            verify_retraction_certificate(pres, ["x"], ["y"], {"x": (0,)})


def borromean_p():
    pres = borromean_presentation()
    return pres, FreeHom(pres, 2, (generator(1, 2), generator(2, 2), identity(2)))


class TestSplitExtensionVerifier:
    def test_borromean_certificate(self):
        pres, p = borromean_p()
        cert = verify_split_extension_certificate(pres, p, "a", generator(2, 2))
        assert cert.variant == "split-extension"
        assert cert.fully_machine_verified
        assert len(cert.steps) == 4

    def test_conjugate_powers_rejected(self):
        # beta = p(a) makes the powers trivially conjugate
        pres, p = borromean_p()
        with pytest.raises(CertificateError, match="conjugate"):
            verify_split_extension_certificate(pres, p, "a", generator(1, 2))

    def test_inverse_conjugate_rejected(self):
        pres, p = borromean_p()
        with pytest.raises(CertificateError, match="conjugate"):
            verify_split_extension_certificate(pres, p, "a",
                                               generator(1, 2).inverse())

    def test_trivial_image_rejected(self):
        pres, p = borromean_p()
        with pytest.raises(CertificateError, match="trivial"):
            verify_split_extension_certificate(pres, p, "c", generator(2, 2))

    def test_trivial_beta_rejected(self):
        pres, p = borromean_p()
        with pytest.raises(CertificateError):
            verify_split_extension_certificate(pres, p, "a", identity(2))


class TestReportAssembly:
    def test_baseline_only(self):
        report = tc_report(groupexpr.SurfaceGroup(2), [])
        assert report.lower == 2  # cat = chd
        assert report.upper == 4  # 2 * dim
        assert not report.certificates

    def test_certificate_raises_lower(self):
        cert = verify_raag_retraction(PATH3, [1], [2, 3])
        g = groupexpr.Raag(PATH3)
        a = groupexpr.FreeAbelian(1)
        b = groupexpr.FreeAbelian(2)
        report = tc_report(g, [(a, b, cert)])
        assert report.lower == 3
        assert report.upper == 4
        assert len(report.lower_provenance) == 2

    def test_opaque_group_needs_dimension_data(self):
        with pytest.raises(CertificateError):
            tc_report("mystery group", [])

    def test_eilenberg_ganea_caveat_note(self):
        g = groupexpr.Opaque("G", 2, 2, "assumed")
        report = tc_report(g, [])
        assert any("Eilenberg-Ganea" in n for n in report.notes)

    def test_json_shape(self):
        report = tc_report(groupexpr.Free(2), [])
        data = report.to_json()
        assert data["schema"] == "tcbounds/1"
        assert data["tc_lower"] == 1 and data["tc_upper"] == 2
        assert data["exact"] is False


class TestFreeProductBound:
    def test_free_factors(self):
        prov = free_product_bound(groupexpr.Free(1), groupexpr.Free(1))
        assert prov.value == 2

    def test_bs12_factors(self):
        prov = free_product_bound(groupexpr.BaumslagSolitar12(),
                                  groupexpr.BaumslagSolitar12())
        assert prov.value == 4

    def test_complementary_certificate_is_cited(self):
        cert = complementary_certificate("G1", "G2", "free factors",
                                         "normal form in free products")
        assert cert.variant == "trusted-chain"
        assert not cert.fully_machine_verified


class TestBorromeanCaseStudy:
    def test_interval(self):
        report = borromean_case_study()
        assert (report.lower, report.upper) == (3, 4)
        assert not report.exact

    def test_certificate_fully_verified(self):
        report = borromean_case_study()
        (cert,) = report.certificates
        assert cert.variant == "split-extension"
        assert cert.fully_machine_verified

    def test_presentation(self):
        pres = borromean_presentation()
        assert pres.generators == ("a", "b", "c")
        r1 = parse_word("[a,[b^-1,c]]", pres.generators)
        r2 = parse_word("[b,[c^-1,a]]", pres.generators)
        assert pres.relators == (r1, r2)


class TestHigmanCaseStudy:
    def test_exactly_four(self):
        report = higman_case_study()
        assert (report.lower, report.upper) == (4, 4)
        assert report.exact

    def test_certificate_mixes_statuses(self):
        report = higman_case_study()
        (cert,) = report.certificates
        assert cert.variant == "trusted-chain"
        machine = [s for s in cert.steps if s.status == "machine-verified"]
        cited = [s for s in cert.steps if s.status == "cited"]
        assert len(machine) == 2
        assert len(cited) == 3
        assert all(s.citation for s in cited)

    def test_acyclicity_note(self):
        report = higman_case_study()
        assert any("acyclic" in n for n in report.notes)

    def test_presentation(self):
        pres = higman_presentation()
        assert pres.generators == ("x", "y", "z", "w")
        assert len(pres.relators) == 4

    def test_small_sample_still_passes(self):
        report = higman_case_study(sample_syllables=4, sample_cap=1,
                                   bfs_radius=4)
        assert report.exact and report.lower == 4

from fockledger.logging.report_writer import REPORT_FORMATS, ReportWriter

__all__ = ["REPORT_FORMATS", "ReportWriter"]

"""
Run recording for the plane-partition congruence toolkit.
Creates timestamped run folders, saves the command line and every report as
JSON, and renders a PDF summary of the run.
"""

import logging
import os
from datetime import datetime
from xml.sax.saxutils import escape

from reportlab.lib import colors
from reportlab.lib.enums import TA_LEFT
from reportlab.lib.pagesizes import letter
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import Paragraph, SimpleDocTemplate, Spacer, Table, TableStyle

import config
from modules.congruence import MultipartitionRouteReport, VerificationReport
from modules.errors import PlaneCongError
from modules.reports import render_text, to_json
from modules.search import SearchResult

logger = logging.getLogger(__name__)

_TABLE_HEADER = ["statement", "method", "bound", "verdict"]


class RunRecorder:
    """
    Manages the artifacts of one CLI run.
    """

    def __init__(self, base_dir=None):
        self.base_dir = base_dir or config.RUN_LOG_DIR
        self.run_folder = None
        self.command = None
        # name -> report, in save order
        self.reports = {}

    def create_run_folder(self):
        """
        Create a timestamped folder for the current run.

        Returns:
            str: Path to the created run folder
        """
        timestamp = datetime.now().strftime("%Y-%m-%d_%H-%M-%S")
        self.run_folder = os.path.join(self.base_dir, timestamp)
        os.makedirs(self.run_folder, exist_ok=True)
        self.command = None
        self.reports = {}
        logger.info("recording run in %s", self.run_folder)
        return self.run_folder

    def _require_folder(self):
        if not self.run_folder:
            raise PlaneCongError("Run folder not created. Call create_run_folder() first.")

    def save_command(self, argv):
        """
        Save the command line to command.txt.

        Args:
            argv (list): Arguments after the program name
        """
        self._require_folder()
        self.command = " ".join(argv)
        with open(os.path.join(self.run_folder, "command.txt"), "w", encoding="utf-8") as f:
            f.write(self.command + "\n")

    def save_report(self, name, report):
        """
        Save one report as <name>.json in the run folder.

        Returns:
            str: Path of the written file
        """
        self._require_folder()
        path = os.path.join(self.run_folder, f"{name}.json")
        with open(path, "w", encoding="utf-8") as f:
            f.write(to_json(report) + "\n")
        self.reports[name] = report
        return path

    @staticmethod
    def _verification_rows(report):
        if isinstance(report, VerificationReport):
            reports = [report]
        elif isinstance(report, SearchResult):
            reports = list(report.results)
        elif isinstance(report, MultipartitionRouteReport):
            reports = list(report.conclusions)
        else:
            return None
        return [
            [r.statement.describe(), r.method, str(r.bound), r.verdict] for r in reports
        ]

    def generate_summary_pdf(self):
        """
        Render summary.pdf: the command, then one section per saved report.

        Returns:
            str: Path to the generated PDF
        """
        self._require_folder()
        pdf_path = os.path.join(self.run_folder, "summary.pdf")
        doc = SimpleDocTemplate(pdf_path, pagesize=letter)
        story = []

        styles = getSampleStyleSheet()
        title_style = ParagraphStyle(
            'RunTitle',
            parent=styles['Heading1'],
            fontSize=18,
            spaceAfter=12,
            alignment=TA_LEFT
        )
        heading_style = ParagraphStyle(
            'RunHeading',
            parent=styles['Heading2'],
            fontSize=14,
            textColor='#333333',
            spaceAfter=8,
            spaceBefore=12,
            alignment=TA_LEFT
        )
        body_style = ParagraphStyle(
            'RunBody',
            parent=styles['Normal'],
            fontSize=9,
            spaceAfter=6,
            alignment=TA_LEFT,
            fontName='Courier'
        )

        story.append(Paragraph(f"Run {os.path.basename(self.run_folder)}", title_style))
        story.append(Spacer(1, 0.2 * inch))
        if self.command:
            story.append(Paragraph("Command", heading_style))
            story.append(Paragraph(escape(self.command), body_style))

        for name, report in self.reports.items():
            story.append(Paragraph(escape(name), heading_style))
            rows = self._verification_rows(report)
            if rows is None:
                text = escape(render_text(report)).replace("\n", "<br/>")
                story.append(Paragraph(text, body_style))
                continue
            if not rows:
                story.append(Paragraph("no statements", body_style))
                continue
            table = Table([_TABLE_HEADER] + rows, repeatRows=1)
            table.setStyle(TableStyle([
                ('FONTNAME', (0, 0), (-1, -1), 'Courier'),
                ('FONTSIZE', (0, 0), (-1, -1), 8),
                ('BACKGROUND', (0, 0), (-1, 0), colors.lightgrey),
                ('GRID', (0, 0), (-1, -1), 0.25, colors.grey),
            ]))
            story.append(table)
            story.append(Spacer(1, 0.1 * inch))

        doc.build(story)
        logger.info("wrote %s", pdf_path)
        return pdf_path
